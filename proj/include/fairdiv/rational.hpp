#ifndef FAIRDIV_RATIONAL_HPP
#define FAIRDIV_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace fairdiv {

// Exact fraction in canonical form (gcd(|num|, den) = 1, den > 0).
// Every value in the library, from densities to epsilons, is one of these.
class Rational {
public:
    Rational() = default;
    Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(int v) : v_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
    Rational(long num, long den);
    explicit Rational(const mpq_class& v);

    // Accepts "p", "p/q", "-p/q". Throws std::invalid_argument on anything else.
    static Rational parse(std::string_view text);

    std::string str() const;
    double to_double() const { return v_.get_d(); }
    const mpq_class& raw() const { return v_; }

    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class v_;
};

Rational abs(const Rational& r);
Rational pow(const Rational& base, unsigned exponent);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

// Nearest multiple of 2^-bits to x, for converting search heuristics back into exact values.
Rational from_double_grid(double x, unsigned bits);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace fairdiv

#endif  // FAIRDIV_RATIONAL_HPP
