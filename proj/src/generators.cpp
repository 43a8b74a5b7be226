#include "fairdiv/generators.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <set>

namespace fairdiv {

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below needs a positive bound");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
        const std::uint64_t v = engine_();
        if (v < limit) return v % bound;
    }
}

Instance uniform_instance(std::size_t n) { return Instance{std::vector<Valuation>(n, Valuation::uniform())}; }

Valuation random_piecewise_valuation(Rng& rng, unsigned max_segments) {
    constexpr long kGrid = 60;
    const auto segments = static_cast<unsigned>(rng.between(1, std::max(1U, max_segments)));
    std::set<long> inner;
    while (inner.size() + 1 < segments) inner.insert(static_cast<long>(rng.between(1, kGrid - 1)));
    std::vector<Rational> breakpoints{Rational(0)};
    for (long b : inner) breakpoints.emplace_back(b, kGrid);
    breakpoints.emplace_back(1);

    std::vector<long> weights(segments);
    bool any = false;
    for (auto& w : weights) {
        w = static_cast<long>(rng.below(10));
        any = any || w > 0;
    }
    if (!any) weights[rng.below(segments)] = 1;
    Rational mass;
    for (unsigned k = 0; k < segments; ++k) mass += Rational(weights[k]) * (breakpoints[k + 1] - breakpoints[k]);
    std::vector<Rational> densities;
    for (long w : weights) densities.push_back(Rational(w) / mass);
    return Valuation(std::move(breakpoints), std::move(densities));
}

Instance random_piecewise_instance(std::size_t n, std::uint64_t seed, unsigned max_segments) {
    Rng rng(seed);
    Instance inst;
    for (std::size_t i = 0; i < n; ++i) inst.agents.push_back(random_piecewise_valuation(rng, max_segments));
    return inst;
}

ValueMatrix random_value_matrix(std::size_t n, Rng& rng) {
    ValueMatrix m(n, std::vector<Rational>(n));
    const auto style = rng.below(4);
    for (std::size_t i = 0; i < n; ++i) {
        auto& row = m[i];
        std::vector<long> w(n);
        for (std::size_t j = 0; j < n; ++j) {
            long& x = w[j];
            switch (style) {
                case 0: x = 20 + static_cast<long>(rng.below(5)); break;   // near uniform
                case 1: x = rng.below(3) == 0 ? static_cast<long>(rng.below(10)) : 0; break;  // sparse
                case 2: x = 1 + static_cast<long>(rng.below(3)); break;  // heavy ties
                default:  // own piece favoured, others nearly equal: coalition bounds are close calls
                    x = j == i ? 20 + static_cast<long>(rng.below(12)) : 18 + static_cast<long>(rng.below(3));
                    break;
            }
        }
        long total = 0;
        for (long x : w) total += x;
        if (total == 0) {
            w[rng.below(n)] = 1;
            total = 1;
        }
        for (std::size_t j = 0; j < n; ++j) row[j] = Rational(w[j], total);
    }
    return m;
}

Allocation random_allocation(std::size_t n, Rng& rng) {
    const auto cells = static_cast<std::size_t>(rng.between(1, 3 * std::max<std::size_t>(n, 1)));
    const long grid = static_cast<long>(4 * cells + rng.below(60));
    std::set<long> cuts;
    while (cuts.size() + 1 < cells) cuts.insert(static_cast<long>(rng.between(1, static_cast<std::uint64_t>(grid - 1))));
    std::vector<Rational> points{Rational(0)};
    for (long c : cuts) points.emplace_back(c, grid);
    points.emplace_back(1);
    std::vector<std::vector<Interval>> parts(n);
    for (std::size_t c = 0; c + 1 < points.size(); ++c) {
        // Deal the first n cells round-robin so most agents get something.
        const std::size_t owner = c < n ? c : rng.below(n);
        parts[owner].emplace_back(points[c], points[c + 1]);
    }
    Allocation a;
    for (auto& p : parts) a.pieces.emplace_back(std::move(p));
    return a;
}

std::uint64_t default_seed(std::uint64_t fallback) {
    const char* env = std::getenv("FAIRDIV_SEED");
    if (env == nullptr || *env == '\0') return fallback;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == nullptr || *end != '\0') return fallback;
    return v;
}

}  // namespace fairdiv
