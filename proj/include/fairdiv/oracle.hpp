#ifndef FAIRDIV_ORACLE_HPP
#define FAIRDIV_ORACLE_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <vector>

#include "fairdiv/allocation.hpp"
#include "fairdiv/piece.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

// A protocol asked for something the tracked-value bookkeeping cannot answer
// (for instance a super-query over a piece whose endpoints were never registered).
class AccountingError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct AgentQueryCounts {
    std::uint64_t eval = 0;
    std::uint64_t cut = 0;
    std::uint64_t super_eval = 0;
    std::uint64_t super_cut = 0;

    std::uint64_t actual() const { return eval + cut; }

    friend bool operator==(const AgentQueryCounts&, const AgentQueryCounts&) = default;
};

// Value of a tracked interval [lo, hi) for every agent; lo is the map key.
struct TrackedInterval {
    Rational hi;
    std::vector<Rational> values;

    friend bool operator==(const TrackedInterval&, const TrackedInterval&) = default;
};

// Everything a protocol run has asked: per-agent counts, every cut point that
// was produced, and the exact value of each tracked interval for each agent.
// The tracked intervals always partition [0,1).
class QueryLedger {
public:
    explicit QueryLedger(std::size_t n = 0);

    std::size_t agents() const { return counts_.size(); }
    const AgentQueryCounts& counts(AgentId i) const { return counts_.at(i); }

    std::uint64_t total_eval() const;
    std::uint64_t total_cut() const;
    std::uint64_t total_super_eval() const;
    std::uint64_t total_super_cut() const;
    std::uint64_t total_actual() const { return total_eval() + total_cut(); }

    const std::set<Rational>& registered_cuts() const { return registered_cuts_; }
    const std::map<Rational, TrackedInterval>& tracked() const { return tracked_; }
    std::vector<Interval> tracked_intervals() const;

    friend bool operator==(const QueryLedger&, const QueryLedger&) = default;

private:
    friend class Oracle;

    std::vector<AgentQueryCounts> counts_;
    std::set<Rational> registered_cuts_;
    std::map<Rational, TrackedInterval> tracked_;
};

enum class OracleMode { honest, adversary };

// Active intervals of one agent: a partition of [0,1) whose cells have known
// value (under the uniform adversary, their length).
class ActivePartition {
public:
    ActivePartition() : boundaries_{Rational(0), Rational(1)} {}

    std::size_t size() const { return boundaries_.size() - 1; }
    const std::set<Rational>& boundaries() const { return boundaries_; }
    std::vector<Interval> intervals() const;
    void split_at(const Rational& x) { boundaries_.insert(x); }

private:
    std::set<Rational> boundaries_;
};

// Per-call charges observed by the oracle itself, so callers can check the
// accounting bounds without instrumenting protocols.
struct ChargeStats {
    std::uint64_t super_queries = 0;
    std::uint64_t max_super_charge = 0;  // actual queries issued by one super-query
    std::uint64_t fresh_registrations = 0;
    std::uint64_t min_register_charge = UINT64_MAX;
    std::uint64_t max_register_charge = 0;
};

struct PartitionStep {
    AgentId agent;
    std::size_t before;
    std::size_t after;
};

// The single chokepoint between protocols and valuations. Honest mode answers
// from an instance; adversary mode answers as if every agent were uniform and
// records how each agent's active partition grows.
class Oracle {
public:
    static Oracle honest(std::shared_ptr<const Instance> instance);
    static Oracle honest(const Instance& instance);
    static Oracle adversary(std::size_t n);

    OracleMode mode() const { return mode_; }
    std::size_t agents() const { return ledger_.agents(); }

    // Robertson-Webb queries. Each call is one actual query.
    Rational eval(AgentId i, const Interval& iv);
    Rational cut(AgentId i, const Rational& x, const Rational& val);

    // Super-queries over a piece whose endpoints are tracked boundaries.
    // Each costs at most two actual queries; the rest is read from tracked values.
    // With `normalize_on`, values are expressed relative to V_i(region).
    Rational super_eval(AgentId i, const Piece& p, const Interval& sub,
                        const Piece* normalize_on = nullptr);
    Rational super_cut(AgentId i, const Piece& p, const Rational& start, const Rational& val,
                       const Piece* normalize_on = nullptr);

    // Splits the tracked interval containing x: one eval per agent for the left
    // fragment, the right fragment by subtraction. Returns the queries issued.
    std::size_t register_cut(const Rational& x);

    bool is_tracked_boundary(const Rational& x) const;
    // Sum of tracked values; no queries. Throws AccountingError if p is not
    // a union of tracked intervals.
    Rational known_value(AgentId i, const Piece& p) const;
    Rational known_value(AgentId i, const Interval& iv) const;

    const QueryLedger& ledger() const { return ledger_; }

    const std::vector<ActivePartition>& active_partitions() const { return active_; }
    const std::vector<PartitionStep>& partition_history() const { return history_; }

    // With audit on, every tracked update is compared against ground truth
    // (instance values, or lengths in adversary mode); a mismatch throws.
    void set_audit(bool on) { audit_ = on; }
    std::uint64_t audited_updates() const { return audited_updates_; }
    bool audit() const;

    const ChargeStats& charges() const { return charges_; }

private:
    Oracle(OracleMode mode, std::size_t n, std::shared_ptr<const Instance> instance);

    void check_agent(AgentId i) const;
    void require_aligned(const Piece& p) const;
    Rational truth(AgentId i, const Interval& iv) const;
    void record_split(AgentId i, const std::vector<Rational>& points);
    void note_super_charge(AgentId i, std::uint64_t before);

    OracleMode mode_;
    std::shared_ptr<const Instance> instance_;
    QueryLedger ledger_;
    std::vector<ActivePartition> active_;
    std::vector<PartitionStep> history_;
    bool audit_ = false;
    std::uint64_t audited_updates_ = 0;
    ChargeStats charges_;
};

}  // namespace fairdiv

#endif  // FAIRDIV_ORACLE_HPP
