#ifndef FAIRDIV_VALUATION_HPP
#define FAIRDIV_VALUATION_HPP

#include <span>
#include <stdexcept>
#include <vector>

#include "fairdiv/piece.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

// Cut target exceeds the value available to the right of the start point.
class InsufficientValue : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Renormalising on a region the agent values at zero.
class DegenerateResidue : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidValuation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Piecewise-constant probability density on [0,1].
//
// breakpoints: 0 = x_0 < x_1 < ... < x_m = 1
// densities:   m non-negative values, densities[k] applies on [x_k, x_{k+1})
//
// The constructor rejects anything that does not integrate to exactly 1.
// Instances are immutable and safe to share between threads.
class Valuation {
public:
    Valuation(std::vector<Rational> breakpoints, std::vector<Rational> densities);
    static Valuation uniform();

    const std::vector<Rational>& breakpoints() const { return breakpoints_; }
    const std::vector<Rational>& densities() const { return densities_; }
    std::size_t segments() const { return densities_.size(); }

    // V([0, x)).
    Rational cdf(const Rational& x) const;

    Rational eval(const Interval& iv) const;
    Rational eval_piece(const Piece& p) const;

    // Smallest x' >= x with V([x, x')) = val.
    Rational cut(const Rational& x, const Rational& val) const;

    friend bool operator==(const Valuation&, const Valuation&) = default;

private:
    std::size_t segment_of(const Rational& x) const;

    std::vector<Rational> breakpoints_;
    std::vector<Rational> densities_;
    std::vector<Rational> cumulative_;  // cdf at each breakpoint
};

Rational eval(const Valuation& v, const Interval& iv);
Rational eval_piece(const Valuation& v, const Piece& p);
Rational cut(const Valuation& v, const Rational& x, const Rational& val);

// A valuation seen through a region R, scaled so that R has value 1.
// Only query outputs are scaled; no new density is ever built.
class RenormalizedView {
public:
    RenormalizedView(const Valuation& v, Piece region);

    const Piece& region() const { return region_; }
    const Rational& region_value() const { return total_; }

    // Value of (I intersected with R) divided by V(R).
    Rational eval(const Interval& iv) const;
    Rational eval_piece(const Piece& p) const;

    // Smallest x' >= x such that the view assigns val to [x, x').
    Rational cut(const Rational& x, const Rational& val) const;

private:
    Valuation v_;
    Piece region_;
    Rational total_;
};

RenormalizedView restrict_renormalize(const Valuation& v, const Piece& region);

// Partition of [0,1) induced by every valuation's cuts at values k/N, k = 1..N-1.
// Each returned cell is worth at most 1/N to every valuation.
std::vector<Interval> common_refinement(std::span<const Valuation> vs, unsigned parts_per_agent);

}  // namespace fairdiv

#endif  // FAIRDIV_VALUATION_HPP
