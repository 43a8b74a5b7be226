#ifndef FAIRDIV_GENERATORS_HPP
#define FAIRDIV_GENERATORS_HPP

#include <cstdint>
#include <random>
#include <string>

#include "fairdiv/allocation.hpp"

namespace fairdiv {

// Seeded source with platform-independent draws (the standard distributions
// are implementation-defined, so only the engine is used directly).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on [0, bound), bound > 0.
    std::uint64_t below(std::uint64_t bound);
    // Uniform on [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
    bool coin() { return below(2) == 1; }

private:
    std::mt19937_64 engine_;
};

Instance uniform_instance(std::size_t n);

// Up to max_segments segments; breakpoints on a 1/60 grid, integer weights in
// [0, 9] (not all zero), normalised exactly.
Valuation random_piecewise_valuation(Rng& rng, unsigned max_segments = 8);
Instance random_piecewise_instance(std::size_t n, std::uint64_t seed, unsigned max_segments = 8);

// Row-stochastic matrix. Styles alternate between near-uniform perturbations,
// sparse rows, rows drawn from a small value set (many ties), and rows that
// favour the agent's own piece (so coalition bounds often pass).
ValueMatrix random_value_matrix(std::size_t n, Rng& rng);

// Complete allocation of [0,1): 1 to 3n cells on a random grid, dealt to
// random agents (some may end up empty).
Allocation random_allocation(std::size_t n, Rng& rng);

// Seed from FAIRDIV_SEED if set and parseable, otherwise `fallback`.
std::uint64_t default_seed(std::uint64_t fallback = 1);

}  // namespace fairdiv

#endif  // FAIRDIV_GENERATORS_HPP
