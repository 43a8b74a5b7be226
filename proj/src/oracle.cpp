#include "fairdiv/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "fairdiv/valuation.hpp"

namespace fairdiv {

QueryLedger::QueryLedger(std::size_t n) : counts_(n) {
    tracked_.emplace(Rational(0), TrackedInterval{Rational(1), std::vector<Rational>(n, Rational(1))});
}

std::uint64_t QueryLedger::total_eval() const {
    return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0},
                           [](std::uint64_t s, const AgentQueryCounts& c) { return s + c.eval; });
}

std::uint64_t QueryLedger::total_cut() const {
    return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0},
                           [](std::uint64_t s, const AgentQueryCounts& c) { return s + c.cut; });
}

std::uint64_t QueryLedger::total_super_eval() const {
    return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0},
                           [](std::uint64_t s, const AgentQueryCounts& c) { return s + c.super_eval; });
}

std::uint64_t QueryLedger::total_super_cut() const {
    return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0},
                           [](std::uint64_t s, const AgentQueryCounts& c) { return s + c.super_cut; });
}

std::vector<Interval> QueryLedger::tracked_intervals() const {
    std::vector<Interval> out;
    out.reserve(tracked_.size());
    for (const auto& [lo, t] : tracked_) out.emplace_back(lo, t.hi);
    return out;
}

std::vector<Interval> ActivePartition::intervals() const {
    std::vector<Interval> out;
    for (auto it = boundaries_.begin(); std::next(it) != boundaries_.end(); ++it) {
        out.emplace_back(*it, *std::next(it));
    }
    return out;
}

Oracle::Oracle(OracleMode mode, std::size_t n, std::shared_ptr<const Instance> instance)
    : mode_(mode), instance_(std::move(instance)), ledger_(n), active_(n) {}

Oracle Oracle::honest(std::shared_ptr<const Instance> instance) {
    const std::size_t n = instance->n();
    return Oracle(OracleMode::honest, n, std::move(instance));
}

Oracle Oracle::honest(const Instance& instance) {
    return honest(std::make_shared<const Instance>(instance));
}

Oracle Oracle::adversary(std::size_t n) { return Oracle(OracleMode::adversary, n, nullptr); }

void Oracle::check_agent(AgentId i) const {
    if (i >= agents()) {
        throw std::out_of_range("agent " + std::to_string(i) + " out of range");
    }
}

Rational Oracle::truth(AgentId i, const Interval& iv) const {
    if (mode_ == OracleMode::adversary) return iv.length();
    return (*instance_)[i].eval(iv);
}

void Oracle::record_split(AgentId i, const std::vector<Rational>& points) {
    if (mode_ != OracleMode::adversary) return;
    const std::size_t before = active_[i].size();
    for (const auto& x : points) active_[i].split_at(x);
    history_.push_back(PartitionStep{i, before, active_[i].size()});
}

Rational Oracle::eval(AgentId i, const Interval& iv) {
    check_agent(i);
    ++ledger_.counts_[i].eval;
    record_split(i, {iv.lo, iv.hi});
    return truth(i, iv);
}

Rational Oracle::cut(AgentId i, const Rational& x, const Rational& val) {
    check_agent(i);
    require_in_cake(x);
    if (val.sign() < 0) throw DomainError("negative cut value " + val.str());
    ++ledger_.counts_[i].cut;
    Rational result;
    if (mode_ == OracleMode::adversary) {
        result = x + val;
        if (result > Rational(1)) {
            throw InsufficientValue("cut of " + val.str() + " from " + x.str() + " exceeds remaining value");
        }
    } else {
        result = (*instance_)[i].cut(x, val);
    }
    record_split(i, {result});
    ledger_.registered_cuts_.insert(result);
    return result;
}

bool Oracle::is_tracked_boundary(const Rational& x) const {
    return x == Rational(1) || ledger_.tracked_.contains(x);
}

void Oracle::require_aligned(const Piece& p) const {
    for (const auto& iv : p.intervals()) {
        if (!is_tracked_boundary(iv.lo) || !is_tracked_boundary(iv.hi)) {
            throw AccountingError("piece endpoint [" + iv.lo.str() + "," + iv.hi.str() +
                                  ") is not a tracked boundary");
        }
    }
}

Rational Oracle::known_value(AgentId i, const Interval& iv) const {
    check_agent(i);
    if (iv.empty()) return Rational(0);
    if (!is_tracked_boundary(iv.lo) || !is_tracked_boundary(iv.hi)) {
        throw AccountingError("interval [" + iv.lo.str() + "," + iv.hi.str() + ") is not tracked");
    }
    Rational total;
    for (auto it = ledger_.tracked_.find(iv.lo); it != ledger_.tracked_.end() && it->first < iv.hi; ++it) {
        total += it->second.values[i];
    }
    return total;
}

Rational Oracle::known_value(AgentId i, const Piece& p) const {
    Rational total;
    for (const auto& iv : p.intervals()) total += known_value(i, iv);
    return total;
}

Rational Oracle::super_eval(AgentId i, const Piece& p, const Interval& sub, const Piece* normalize_on) {
    check_agent(i);
    require_aligned(p);
    ++ledger_.counts_[i].super_eval;
    const std::uint64_t before = ledger_.counts_[i].actual();
    Rational total;
    const Piece window = p.clip(sub.lo, sub.hi);
    for (const auto& iv : window.intervals()) {
        auto it = ledger_.tracked_.upper_bound(iv.lo);
        --it;
        for (; it != ledger_.tracked_.end() && it->first < iv.hi; ++it) {
            const Rational& lo = max(it->first, iv.lo);
            const Rational& hi = min(it->second.hi, iv.hi);
            if (lo == it->first && hi == it->second.hi) {
                total += it->second.values[i];
            } else {
                // Only the fragments at sub.lo and sub.hi can be partial.
                total += eval(i, Interval(lo, hi));
            }
        }
    }
    if (normalize_on != nullptr) {
        const Rational scale = known_value(i, *normalize_on);
        if (scale.is_zero()) throw DegenerateResidue("normalising region has zero value");
        total /= scale;
    }
    note_super_charge(i, before);
    return total;
}

Rational Oracle::super_cut(AgentId i, const Piece& p, const Rational& start, const Rational& val,
                           const Piece* normalize_on) {
    check_agent(i);
    require_aligned(p);
    require_in_cake(start);
    if (val.sign() < 0) throw DomainError("negative cut value " + val.str());
    ++ledger_.counts_[i].super_cut;
    const std::uint64_t before = ledger_.counts_[i].actual();
    Rational target = val;
    if (normalize_on != nullptr) {
        const Rational scale = known_value(i, *normalize_on);
        if (scale.is_zero()) throw DegenerateResidue("normalising region has zero value");
        target *= scale;
    }
    if (target.is_zero()) {
        note_super_charge(i, before);
        return start;
    }
    Rational acc;
    const Piece rest = p.clip(start, Rational(1));
    for (const auto& iv : rest.intervals()) {
        auto it = ledger_.tracked_.upper_bound(iv.lo);
        --it;
        for (; it != ledger_.tracked_.end() && it->first < iv.hi; ++it) {
            const Interval seg(max(it->first, iv.lo), min(it->second.hi, iv.hi));
            const bool whole = seg.lo == it->first && seg.hi == it->second.hi;
            const Rational here = whole ? it->second.values[i] : eval(i, seg);
            if (target - acc <= here) {
                const Rational mark = cut(i, seg.lo, target - acc);
                note_super_charge(i, before);
                return mark;
            }
            acc += here;
        }
    }
    throw InsufficientValue("super cut of " + target.str() + " exceeds the value left in the piece");
}

void Oracle::note_super_charge(AgentId i, std::uint64_t before) {
    ++charges_.super_queries;
    charges_.max_super_charge = std::max(charges_.max_super_charge, ledger_.counts_[i].actual() - before);
}

std::size_t Oracle::register_cut(const Rational& x) {
    require_in_cake(x);
    if (is_tracked_boundary(x) || x.is_zero()) return 0;
    auto it = ledger_.tracked_.upper_bound(x);
    --it;
    const std::uint64_t before = ledger_.total_actual();
    const Rational lo = it->first;
    const Interval left(lo, x);
    const Interval right(x, it->second.hi);
    TrackedInterval right_part{it->second.hi, {}};
    right_part.values.reserve(agents());
    for (AgentId i = 0; i < agents(); ++i) {
        const Rational left_value = eval(i, left);
        right_part.values.push_back(it->second.values[i] - left_value);
        it->second.values[i] = left_value;
    }
    it->second.hi = x;
    if (audit_) {
        for (AgentId i = 0; i < agents(); ++i) {
            if (it->second.values[i] != truth(i, left) || right_part.values[i] != truth(i, right)) {
                throw AccountingError("tracked value mismatch after registering " + x.str());
            }
        }
        ++audited_updates_;
    }
    ledger_.tracked_.emplace(x, std::move(right_part));
    ledger_.registered_cuts_.insert(x);
    const std::uint64_t charge = ledger_.total_actual() - before;
    ++charges_.fresh_registrations;
    charges_.min_register_charge = std::min(charges_.min_register_charge, charge);
    charges_.max_register_charge = std::max(charges_.max_register_charge, charge);
    return agents();
}

bool Oracle::audit() const {
    for (const auto& [lo, t] : ledger_.tracked_) {
        const Interval iv(lo, t.hi);
        for (AgentId i = 0; i < agents(); ++i) {
            if (t.values[i] != truth(i, iv)) return false;
        }
    }
    return true;
}

}  // namespace fairdiv
