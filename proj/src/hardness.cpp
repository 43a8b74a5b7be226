#include "fairdiv/hardness.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace fairdiv {

AdversarySession adversary_session(std::size_t n, const ProtocolFn& protocol) {
    Oracle oracle = Oracle::adversary(n);
    ProtocolResult result = protocol(oracle);
    return AdversarySession{std::move(result), oracle.partition_history(), oracle.active_partitions()};
}

GrowthReport audit_partition_growth(const std::vector<PartitionStep>& history,
                                    const std::vector<ActivePartition>& partitions, const QueryLedger& ledger) {
    GrowthReport report;
    report.steps = history.size();
    std::vector<std::size_t> current(partitions.size(), 1);
    for (const auto& step : history) {
        if (step.agent >= partitions.size()) {
            report.pass = false;
            report.violation = "step refers to unknown agent";
            return report;
        }
        const std::size_t growth = step.after - step.before;
        report.max_growth = std::max(report.max_growth, growth);
        if (step.before != current[step.agent] || step.after < step.before || growth > 2) {
            report.pass = false;
            report.violation = "agent " + std::to_string(step.agent) + " grew from " +
                               std::to_string(step.before) + " to " + std::to_string(step.after);
            return report;
        }
        current[step.agent] = step.after;
    }
    for (AgentId i = 0; i < partitions.size(); ++i) {
        const std::size_t size = partitions[i].size();
        const std::uint64_t t = ledger.counts(i).actual();
        report.final_sizes.push_back(size);
        report.queries.push_back(t);
        if (size != current[i] || size > 2 * t + 1) {
            report.pass = false;
            report.violation = "agent " + std::to_string(i) + " has " + std::to_string(size) +
                               " active intervals after " + std::to_string(t) + " queries";
        }
    }
    return report;
}

GrowthReport audit_partition_growth(const AdversarySession& session) {
    return audit_partition_growth(session.history, session.partitions, session.result.ledger);
}

std::vector<std::optional<Interval>> active_intervals_of_length(const AdversarySession& session,
                                                                const Rational& length) {
    std::vector<std::optional<Interval>> out;
    const auto& pieces = session.result.allocation.pieces;
    for (AgentId i = 0; i < session.partitions.size(); ++i) {
        std::optional<Interval> found;
        for (const auto& iv : session.partitions[i].intervals()) {
            if (iv.length() == length && subtract(Piece{iv}, pieces[i]).empty()) {
                found = iv;
                break;
            }
        }
        out.push_back(found);
    }
    return out;
}

Valuation mixture(const Valuation& v1, const Valuation& v2) {
    std::set<Rational> points(v1.breakpoints().begin(), v1.breakpoints().end());
    points.insert(v2.breakpoints().begin(), v2.breakpoints().end());
    std::vector<Rational> breakpoints(points.begin(), points.end());
    std::vector<Rational> densities;
    for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
        const Interval iv(breakpoints[k], breakpoints[k + 1]);
        densities.push_back((v1.eval(iv) + v2.eval(iv)) / (Rational(2) * iv.length()));
    }
    return Valuation(std::move(breakpoints), std::move(densities));
}

Instance clb2_hard_instance(std::size_t n, const Valuation& v1, const Valuation& v2) {
    if (n < 2 || (n % 2 == 1 && n < 3)) throw std::invalid_argument("hard instance needs n >= 2");
    const std::size_t h = n / 2;
    Instance inst;
    for (std::size_t i = 0; i < h; ++i) inst.agents.push_back(v1);
    for (std::size_t i = 0; i < h; ++i) inst.agents.push_back(v2);
    if (n % 2 == 1) inst.agents.push_back(mixture(v1, v2));
    return inst;
}

Instance clb2_hard_instance(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    const Valuation v1 = random_piecewise_valuation(rng);
    const Valuation v2 = random_piecewise_valuation(rng);
    return clb2_hard_instance(n, v1, v2);
}

bool ImplicationReport::all_hold() const {
    return std::all_of(equalities.begin(), equalities.end(), [](const ForcedEquality& e) { return e.holds(); });
}

Rational ImplicationReport::max_deviation() const {
    Rational worst;
    for (const auto& e : equalities) worst = max(worst, abs(e.value - e.expected));
    return worst;
}

ImplicationReport exact_division_implication_check(const Allocation& a, const Instance& hard) {
    const std::size_t n = hard.n();
    if (n < 2 || a.n() != n) throw std::invalid_argument("allocation does not match the hard instance");
    const std::size_t h = n / 2;
    const Valuation& v1 = hard[0];
    const Valuation& v2 = hard[h];
    ImplicationReport report;
    const Rational single(1, static_cast<long>(n));
    const Rational pair(2, static_cast<long>(n));
    auto add = [&](const std::string& what, const Rational& value, const Rational& expected) {
        report.equalities.push_back(ForcedEquality{what, value, expected});
    };
    if (n % 2 == 1) {
        const std::string name = "A_" + std::to_string(n - 1);
        add("V1(" + name + ")", v1.eval_piece(a.pieces[n - 1]), single);
        add("V2(" + name + ")", v2.eval_piece(a.pieces[n - 1]), single);
    }
    for (std::size_t i = 0; i < h; ++i) {
        const Piece both = unite(a.pieces[i], a.pieces[i + h]);
        const std::string name = "A_" + std::to_string(i) + " u A_" + std::to_string(i + h);
        add("V1(" + name + ")", v1.eval_piece(both), pair);
        add("V2(" + name + ")", v2.eval_piece(both), pair);
    }
    return report;
}

Allocation perfect_split_allocation(const Valuation& v, std::size_t n, Rng& rng) {
    if (n == 0) throw std::invalid_argument("need at least one agent");
    const std::size_t cells = 2 * n;
    std::vector<Rational> points{Rational(0)};
    for (std::size_t k = 1; k < cells; ++k) {
        points.push_back(v.cut(Rational(0), Rational(static_cast<long>(k), static_cast<long>(cells))));
    }
    points.emplace_back(1);
    std::vector<std::size_t> order(cells);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t k = cells; k > 1; --k) std::swap(order[k - 1], order[rng.below(k)]);
    Allocation a;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c1 = order[2 * i];
        const std::size_t c2 = order[2 * i + 1];
        a.pieces.push_back(Piece{Interval(points[c1], points[c1 + 1]), Interval(points[c2], points[c2 + 1])});
    }
    return a;
}

}  // namespace fairdiv
