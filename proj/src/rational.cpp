#include "fairdiv/rational.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace fairdiv {

namespace {

bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

mpz_class parse_integer(std::string_view s) {
    std::string buf(s);
    if (!buf.empty() && buf[0] == '+') buf.erase(0, 1);
    return mpz_class(buf, 10);
}

}  // namespace

Rational::Rational(long num, long den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    v_ = mpq_class(mpz_class(num), mpz_class(den));
    v_.canonicalize();
}

Rational::Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!is_integer_literal(text)) {
            throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
        }
        return Rational(mpq_class(parse_integer(text)));
    }
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-') {
        throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    }
    const mpz_class d = parse_integer(den);
    if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    return Rational(mpq_class(parse_integer(num), d));
}

std::string Rational::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    v_ /= o.v_;
    return *this;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational pow(const Rational& base, unsigned exponent) {
    Rational result(1);
    Rational b = base;
    while (exponent != 0) {
        if (exponent & 1U) result *= b;
        exponent >>= 1U;
        if (exponent != 0) b *= b;
    }
    return result;
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational from_double_grid(double x, unsigned bits) {
    if (!std::isfinite(x)) throw std::domain_error("non-finite value");
    const double scaled = std::nearbyint(std::ldexp(x, static_cast<int>(bits)));
    mpz_class num;
    mpz_set_d(num.get_mpz_t(), scaled);
    mpz_class den(1);
    den <<= bits;
    return Rational(mpq_class(num, den));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace fairdiv
