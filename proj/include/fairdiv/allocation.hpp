#ifndef FAIRDIV_ALLOCATION_HPP
#define FAIRDIV_ALLOCATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "fairdiv/piece.hpp"
#include "fairdiv/valuation.hpp"

namespace fairdiv {

using AgentId = std::size_t;

// n agents and their valuations; agent identity is the index.
struct Instance {
    std::vector<Valuation> agents;

    std::size_t n() const { return agents.size(); }
    const Valuation& operator[](AgentId i) const { return agents.at(i); }

    friend bool operator==(const Instance&, const Instance&) = default;
};

// Pieces stored positionally by agent. Disjointness is checked by validate(),
// not enforced at construction, so malformed inputs can be reported on.
struct Allocation {
    std::vector<Piece> pieces;

    std::size_t n() const { return pieces.size(); }
    const Piece& operator[](AgentId i) const { return pieces.at(i); }

    friend bool operator==(const Allocation&, const Allocation&) = default;
};

// A_S: union of the pieces of the agents in `agents`.
Piece bundle(const Allocation& a, const std::vector<AgentId>& agents);

bool is_complete(const Allocation& a);

struct ValidationReport {
    enum class Status { ok, overlap, incomplete };

    Status status = Status::ok;
    std::optional<AgentId> first;   // overlapping pair, when status == overlap
    std::optional<AgentId> second;
    std::optional<Interval> witness;  // shared interval or first uncovered interval
    std::string message;

    bool ok() const { return status == Status::ok; }
};

ValidationReport validate(const Allocation& a, bool require_complete);

// values[i][j] = V_i(A_j), exact.
using ValueMatrix = std::vector<std::vector<Rational>>;
ValueMatrix value_matrix(const Instance& inst, const Allocation& a);

}  // namespace fairdiv

#endif  // FAIRDIV_ALLOCATION_HPP
