#ifndef FAIRDIV_HARDNESS_HPP
#define FAIRDIV_HARDNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairdiv/allocation.hpp"
#include "fairdiv/generators.hpp"
#include "fairdiv/oracle.hpp"
#include "fairdiv/protocols.hpp"

namespace fairdiv {

// A protocol run against the uniform-answer adversary.
struct AdversarySession {
    ProtocolResult result;
    std::vector<PartitionStep> history;
    std::vector<ActivePartition> partitions;  // final active partition per agent
};

AdversarySession adversary_session(std::size_t n, const ProtocolFn& protocol);

struct GrowthReport {
    bool pass = true;
    std::size_t steps = 0;
    std::size_t max_growth = 0;
    std::vector<std::size_t> final_sizes;
    std::vector<std::uint64_t> queries;  // actual queries per agent
    std::string violation;               // empty when pass
};

// Growth at most 2 per query, steps chain consistently per agent, and
// |final partition| <= 2 T_i + 1 for T_i queries to agent i.
GrowthReport audit_partition_growth(const std::vector<PartitionStep>& history,
                                    const std::vector<ActivePartition>& partitions, const QueryLedger& ledger);
GrowthReport audit_partition_growth(const AdversarySession& session);

// For each agent, an active interval of its own partition that lies inside its
// piece and has length exactly `length`, if any.
std::vector<std::optional<Interval>> active_intervals_of_length(const AdversarySession& session,
                                                                const Rational& length);

// (V1 + V2)/2 on the union of both breakpoint sets.
Valuation mixture(const Valuation& v1, const Valuation& v2);

// Agents 0..h-1 hold V1, h..2h-1 hold V2 (h = floor(n/2)); for odd n the last
// agent holds the mixture. Needs n >= 2 (n >= 3 when odd).
Instance clb2_hard_instance(std::size_t n, const Valuation& v1, const Valuation& v2);
Instance clb2_hard_instance(std::size_t n, std::uint64_t seed);

struct ForcedEquality {
    std::string what;  // e.g. "V1(A_4)" or "V2(A_0 u A_2)"
    Rational value;
    Rational expected;
    bool holds() const { return value == expected; }
};

struct ImplicationReport {
    std::vector<ForcedEquality> equalities;
    bool all_hold() const;
    Rational max_deviation() const;
};

// The equalities forced by CLB-2 on the hard instance: V1, V2 give 1/n to the
// last agent's piece (odd n) and 2/n to every pair A_i u A_{i+h}.
ImplicationReport exact_division_implication_check(const Allocation& a, const Instance& hard);

// Allocation giving every agent two cells each worth exactly 1/(2n) under v,
// with cells dealt out in shuffled order. On an instance whose agents all hold
// v it is perfect, hence CLB-2.
Allocation perfect_split_allocation(const Valuation& v, std::size_t n, Rng& rng);

}  // namespace fairdiv

#endif  // FAIRDIV_HARDNESS_HPP
