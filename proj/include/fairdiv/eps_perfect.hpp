#ifndef FAIRDIV_EPS_PERFECT_HPP
#define FAIRDIV_EPS_PERFECT_HPP

#include <stdexcept>
#include <vector>

#include "fairdiv/oracle.hpp"
#include "fairdiv/piece.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

class SubroutineFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Whose valuation a partition must balance: a real agent (answered through the
// oracle) or a phantom with uniform density (answered locally, never queried).
struct PartitionView {
    enum class Kind { agent, phantom };

    Kind kind = Kind::agent;
    AgentId agent = 0;

    static PartitionView real(AgentId i) { return PartitionView{Kind::agent, i}; }
    static PartitionView phantom() { return PartitionView{Kind::phantom, 0}; }
};

struct PartitionResult {
    std::vector<Piece> parts;
    std::size_t cuts_introduced = 0;  // fresh boundaries registered with the oracle
    std::size_t refinements = 0;      // rounding attempts that needed a finer pool
};

// Splits `region` into z pieces such that every view, normalised on the region,
// values every piece within [1/z - eps, 1/z + eps]. The region's endpoints must
// be tracked boundaries; every returned piece is a union of tracked intervals.
//
// Works part by part: a fractional assignment of the current cells is pushed
// to a vertex (few fractional cells), those cells are rounded or split, and
// the pool is refined when rounding misses the tolerance. Floating point only
// steers the search; every accepted part is checked exactly.
//
// Throws SubroutineFailure when the refinement budget runs out, and never
// returns a partition that fails the bound.
PartitionResult eps_perfect_partition(Oracle& oracle, const std::vector<PartitionView>& views, std::size_t z,
                                      const Rational& eps, const Piece& region);

// Point at which the part of `region` left of it has length `len`.
Rational point_at_length(const Piece& region, const Rational& len);

}  // namespace fairdiv

#endif  // FAIRDIV_EPS_PERFECT_HPP
