#include "fairdiv/hierarchy.hpp"

#include <stdexcept>

namespace fairdiv {

namespace {

long as_long(std::size_t v) { return static_cast<long>(v); }

ValueMatrix zeros(std::size_t n) { return ValueMatrix(n, std::vector<Rational>(n)); }

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

Realized realize_value_matrix(const ValueMatrix& m) {
    const std::size_t n = m.size();
    require(n >= 1, "value matrix must be non-empty");
    Instance inst;
    Allocation alloc;
    std::vector<Rational> breakpoints;
    for (std::size_t j = 0; j <= n; ++j) breakpoints.emplace_back(as_long(j), as_long(n));
    for (std::size_t j = 0; j < n; ++j) alloc.pieces.push_back(Piece{Interval(breakpoints[j], breakpoints[j + 1])});
    for (const auto& row : m) {
        require(row.size() == n, "value matrix must be square");
        Rational sum;
        std::vector<Rational> densities;
        for (const auto& v : row) {
            require(v.sign() >= 0, "value matrix entries must be non-negative");
            sum += v;
            densities.push_back(v * Rational(as_long(n)));
        }
        require(sum == Rational(1), "value matrix rows must sum to 1");
        inst.agents.emplace_back(breakpoints, std::move(densities));
    }
    return Realized{std::move(inst), std::move(alloc), m};
}

ValueMatrix chb_strict_matrix(std::size_t n, std::size_t k) {
    require(k >= 1 && k + 1 <= n, "chb-strict needs 1 <= k <= n-1");
    ValueMatrix m = zeros(n);
    const Rational own(1, as_long(n - k + 1));
    for (std::size_t i = 0; i < n; ++i) {
        m[i][i] = own;
        m[i][(i + 1) % n] = Rational(1) - own;
    }
    return m;
}

ValueMatrix chb_not_ef_matrix(std::size_t n) {
    require(n >= 3, "chb-not-ef needs n >= 3");
    ValueMatrix m = zeros(n);
    for (std::size_t i = 0; i < n; ++i) {
        m[i][i] = Rational(1, 3);
        m[i][(i + 1) % n] = Rational(1, 2);
        m[i][(i + 2) % n] = Rational(1, 6);
    }
    return m;
}

ValueMatrix clb_strict_matrix(std::size_t n, std::size_t k) {
    require(k >= 1 && k + 1 < n, "clb-strict needs 1 <= k < n-1");
    ValueMatrix m = zeros(n);
    const Rational rest = (Rational(1) + Rational(1, as_long(n - k - 1))) / Rational(as_long(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = rest;
        m[i][i] = Rational(as_long(k), as_long(n));
        for (std::size_t z = 1; z <= k; ++z) m[i][(i + z) % n] = Rational(0);
    }
    return m;
}

ValueMatrix clb_not_ef_matrix(std::size_t n) {
    require(n >= 3, "clb-not-ef needs n >= 3");
    const std::size_t c = (n + 1) / 2 - 1;
    ValueMatrix m = zeros(n);
    const Rational own(as_long(c), as_long(n));
    for (std::size_t i = 0; i < n; ++i) {
        m[i][i] = own;
        m[i][(i + 1) % n] = Rational(1) - own;
    }
    return m;
}

ValueMatrix ef_not_clb2_matrix(std::size_t n) {
    require(n >= 3, "ef-not-clb2 needs n >= 3");
    ValueMatrix m = zeros(n);
    const Rational each(1, as_long(n - 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = each;
        m[i][(i + 1) % n] = Rational(0);
    }
    return m;
}

Realized counterexample_chb_strict(std::size_t n, std::size_t k) {
    return realize_value_matrix(chb_strict_matrix(n, k));
}
Realized counterexample_chb_not_ef(std::size_t n) { return realize_value_matrix(chb_not_ef_matrix(n)); }
Realized counterexample_clb_strict(std::size_t n, std::size_t k) {
    return realize_value_matrix(clb_strict_matrix(n, k));
}
Realized counterexample_clb_not_ef(std::size_t n) { return realize_value_matrix(clb_not_ef_matrix(n)); }
Realized counterexample_ef_not_clb2(std::size_t n) { return realize_value_matrix(ef_not_clb2_matrix(n)); }

const std::vector<std::string>& hierarchy_cases() {
    static const std::vector<std::string> names{"chb-strict", "chb-not-ef", "clb-strict", "clb-not-ef",
                                                "ef-not-clb2"};
    return names;
}

Realized hierarchy_case(const std::string& name, std::size_t n, std::size_t k) {
    if (name == "chb-strict") return counterexample_chb_strict(n, k);
    if (name == "chb-not-ef") return counterexample_chb_not_ef(n);
    if (name == "clb-strict") return counterexample_clb_strict(n, k);
    if (name == "clb-not-ef") return counterexample_clb_not_ef(n);
    if (name == "ef-not-clb2") return counterexample_ef_not_clb2(n);
    throw std::invalid_argument("unknown hierarchy case '" + name + "'");
}

}  // namespace fairdiv
