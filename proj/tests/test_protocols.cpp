#include <gtest/gtest.h>

#include <cmath>

#include "fairdiv/generators.hpp"
#include "fairdiv/predicates.hpp"
#include "fairdiv/protocols.hpp"

using namespace fairdiv;

namespace {

Rational R(long a, long b = 1) { return Rational(a, b); }

Rational share(std::size_t n) { return R(1, static_cast<long>(n)); }

}  // namespace

TEST(CutAndChoose, UniformSplitsInHalf) {
    Oracle o = Oracle::honest(uniform_instance(2));
    const ProtocolResult r = cut_and_choose(o);
    EXPECT_EQ(r.allocation[0], Piece{Interval(0, R(1, 2))});
    EXPECT_EQ(r.ledger.total_cut(), 1u);
    EXPECT_EQ(r.ledger.total_eval(), 1u);
    EXPECT_TRUE(is_envy_free(r.allocation, uniform_instance(2)).pass());
}

TEST(CutAndChoose, ChooserTakesRightWhenLeftIsSmall) {
    const Instance inst{{Valuation::uniform(), Valuation({R(0), R(1, 2), R(1)}, {R(1, 2), R(3, 2)})}};
    Oracle o = Oracle::honest(inst);
    const ProtocolResult r = cut_and_choose(o);
    EXPECT_EQ(r.allocation[1], Piece{Interval(R(1, 2), 1)});
    EXPECT_TRUE(is_envy_free(r.allocation, inst).pass());
}

TEST(CutAndChoose, NeedsTwoAgents) {
    Oracle o = Oracle::honest(uniform_instance(3));
    EXPECT_THROW(cut_and_choose(o), std::invalid_argument);
}

TEST(EvenPaz, UniformGivesEqualIntervals) {
    for (std::size_t n : {1, 2, 3, 5, 8}) {
        Oracle o = Oracle::honest(uniform_instance(n));
        const ProtocolResult r = even_paz(o);
        for (AgentId i = 0; i < n; ++i) {
            ASSERT_EQ(r.allocation[i].size(), 1u);
            EXPECT_EQ(r.allocation[i].length(), share(n));
        }
    }
}

TEST(LastDiminisher, UniformGivesEqualIntervals) {
    for (std::size_t n : {1, 2, 4, 7}) {
        Oracle o = Oracle::honest(uniform_instance(n));
        const ProtocolResult r = last_diminisher(o);
        for (AgentId i = 0; i < n; ++i) EXPECT_EQ(r.allocation[i].length(), share(n));
    }
}

TEST(Baselines, ProportionalOnRandomInstances) {
    Rng rng(default_seed(71));
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = rng.between(1, 9);
        const Instance inst = random_piecewise_instance(n, rng.below(1u << 30));
        for (const ProtocolFn& fn : {ProtocolFn(even_paz), ProtocolFn(last_diminisher)}) {
            Oracle o = Oracle::honest(inst);
            const ProtocolResult r = fn(o);
            EXPECT_TRUE(validate(r.allocation, true).ok());
            EXPECT_TRUE(is_proportional(r.allocation, inst).pass());
        }
    }
}

TEST(Baselines, QueryGrowth) {
    // Even-Paz grows like n log n, last diminisher like n^2.
    std::vector<double> xs;
    std::vector<double> ep;
    std::vector<double> ld;
    for (std::size_t n : {8, 16, 32, 64}) {
        Oracle a = Oracle::honest(uniform_instance(n));
        Oracle b = Oracle::honest(uniform_instance(n));
        xs.push_back(std::log(static_cast<double>(n)));
        ep.push_back(std::log(static_cast<double>(even_paz(a).ledger.total_actual())));
        ld.push_back(std::log(static_cast<double>(last_diminisher(b).ledger.total_actual())));
    }
    const auto slope = [&](const std::vector<double>& ys) { return (ys.back() - ys.front()) / (xs.back() - xs.front()); };
    EXPECT_LT(slope(ep), 1.4);
    EXPECT_GT(slope(ep), 0.9);
    EXPECT_GT(slope(ld), 1.7);
    EXPECT_LT(slope(ld), 2.2);
}

TEST(Algorithm1, Parameters) {
    for (std::size_t n = 2; n <= 30; ++n) {
        const std::size_t p = alg1_phantoms(n);
        EXPECT_EQ(p, (n + 2) / 3);
        const Rational z(static_cast<long>(n + p));
        const Rational eps = alg1_eps(n);
        EXPECT_GT(eps, R(0));
        EXPECT_LE(Rational(1) / z + eps, share(n));
        EXPECT_GE(Rational(1) / z - eps, R(1, static_cast<long>(2 * n)));
        if (n % 3 == 0) EXPECT_EQ(eps, R(1, static_cast<long>(4 * n)));
    }
}

TEST(Algorithm1, UniformThreeAgents) {
    const Instance inst = uniform_instance(3);
    Oracle o = Oracle::honest(inst);
    const ProtocolResult r = algorithm1_chb_n(o);
    EXPECT_TRUE(check_chb(r.allocation, inst, 3).pass());
    EXPECT_TRUE(is_proportional(r.allocation, inst).pass());
}

TEST(Algorithm1, WinnersGetExactlyAShareAndBundlesStayLarge) {
    Rng rng(default_seed(72));
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = rng.between(2, 7);
        const Instance inst = random_piecewise_instance(n, rng.below(1u << 30));
        Oracle o = Oracle::honest(inst);
        const ProtocolResult r = algorithm1_chb_n(o);
        ASSERT_TRUE(validate(r.allocation, true).ok());
        EXPECT_TRUE(check_chb(r.allocation, inst, n).pass());

        std::vector<AgentId> winners;
        for (const auto& e : r.trace) {
            if (e.kind == "winner") winners.push_back(*e.agent);
        }
        ASSERT_EQ(winners.size(), n - 1);
        for (AgentId w : winners) EXPECT_EQ(inst[w].eval_piece(r.allocation[w]), share(n));

        const ValueMatrix m = value_matrix(inst, r.allocation);
        for (const auto& row : m) {
            for (const auto& v : row) EXPECT_GE(v, R(1, static_cast<long>(2 * n)));
        }
    }
}

TEST(Algorithm1, DepartingBundlesWorthAtMostAShare) {
    // Replay the winners in order: each departing bundle is worth at most 1/n
    // to every agent still waiting.
    Rng rng(default_seed(73));
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = rng.between(3, 7);
        const Instance inst = random_piecewise_instance(n, rng.below(1u << 30));
        Oracle o = Oracle::honest(inst);
        const ProtocolResult r = algorithm1_chb_n(o);
        std::vector<bool> gone(n, false);
        for (const auto& e : r.trace) {
            if (e.kind != "winner") continue;
            const AgentId w = *e.agent;
            gone[w] = true;
            for (AgentId i = 0; i < n; ++i) {
                if (!gone[i]) EXPECT_LE(inst[i].eval_piece(r.allocation[w]), share(n));
            }
        }
    }
}

TEST(Algorithm1, Deterministic) {
    const Instance inst = random_piecewise_instance(5, 9);
    Oracle a = Oracle::honest(inst);
    Oracle b = Oracle::honest(inst);
    const ProtocolResult ra = algorithm1_chb_n(a);
    const ProtocolResult rb = algorithm1_chb_n(b);
    EXPECT_EQ(ra.allocation, rb.allocation);
    EXPECT_EQ(ra.ledger, rb.ledger);
    ASSERT_EQ(ra.trace.size(), rb.trace.size());
}

TEST(Alg2Params, Examples) {
    const Alg2Params p = derive_params_from_slack(3, R(1, 100));
    EXPECT_EQ(p.d, 4u);
    EXPECT_EQ(p.eps_prime, R(9, 12800));
    EXPECT_EQ(std::ceil(std::log(0.015) / std::log(0.25)), 4.0);

    const Alg2Params q = derive_alg2_params(3, R(3, 100));
    EXPECT_EQ(q.eps_tilde, R(1, 100));
    EXPECT_EQ(q.d, 4u);
    EXPECT_EQ(q.eps, R(3, 100));

    EXPECT_THROW(derive_alg2_params(3, R(0)), std::invalid_argument);
    EXPECT_THROW(derive_alg2_params(3, R(1)), std::invalid_argument);
    EXPECT_THROW(derive_alg2_params(1, R(1, 10)), std::invalid_argument);
}

TEST(Alg2Params, GeometricSumHoldsExactly) {
    for (std::size_t n = 2; n <= 20; ++n) {
        const auto nn = static_cast<long>(n);
        for (long m : {10L, 37L, 100L, 999L, 1000L, 100000L}) {
            const Rational et(1, m);
            const Alg2Params p = derive_params_from_slack(n, et);
            const Rational q(1, nn + 1);
            Rational sum;
            for (unsigned t = 1; t <= p.d; ++t) sum += pow(q, t);
            EXPECT_EQ(sum, (Rational(1) - pow(q, p.d)) / Rational(nn));
            EXPECT_GE(sum, Rational(1, nn) - et / Rational(2));
        }
    }
}

TEST(Algorithm2, UniformThreeAgents) {
    const Instance inst = uniform_instance(3);
    Oracle o = Oracle::honest(inst);
    const Rational eps(1, 10);
    const ProtocolResult r = algorithm2(o, eps);
    EXPECT_TRUE(validate(r.allocation, true).ok());
    EXPECT_TRUE(is_proportional(r.allocation, inst).pass());
    EXPECT_TRUE(is_eps_perfect(r.allocation, inst, eps).pass());
    EXPECT_TRUE(check_delta_clb(r.allocation, inst, 3, eps * R(3)).pass());
}

TEST(Algorithm2, RandomInstancesWithAudit) {
    Rng rng(default_seed(74));
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t n = rng.between(2, 5);
        const Instance inst = random_piecewise_instance(n, rng.below(1u << 30));
        const Rational eps(1, static_cast<long>(rng.between(5, 30)));
        Oracle o = Oracle::honest(inst);
        o.set_audit(true);
        const ProtocolResult r = algorithm2(o, eps);
        EXPECT_TRUE(validate(r.allocation, true).ok());
        EXPECT_TRUE(is_proportional(r.allocation, inst).pass());
        EXPECT_TRUE(is_eps_perfect(r.allocation, inst, eps).pass());
        EXPECT_TRUE(check_delta_clb(r.allocation, inst, n, eps * Rational(static_cast<long>(n))).pass());
        EXPECT_TRUE(o.audit());
        EXPECT_LE(o.charges().max_super_charge, 2u);

        const Rational et = eps / Rational(static_cast<long>(n));
        std::size_t acc = 0;
        for (const auto& e : r.trace) {
            if (e.kind != "accumulator") continue;
            ++acc;
            for (AgentId i = 0; i < n; ++i) {
                const Rational v = inst[i].eval_piece(*e.region);
                EXPECT_GE(v, share(n) - et);
                EXPECT_LE(v, share(n));
            }
        }
        EXPECT_EQ(acc, n);
    }
}

TEST(ProtocolByName, Lookup) {
    EXPECT_THROW(protocol_by_name("alg2"), std::invalid_argument);
    EXPECT_THROW(protocol_by_name("moving-knife"), std::invalid_argument);
    Oracle o = Oracle::honest(uniform_instance(2));
    EXPECT_EQ(protocol_by_name("cut-choose")(o).ledger.total_actual(), 2u);
}
