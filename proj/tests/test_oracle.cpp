#include <gtest/gtest.h>

#include "fairdiv/generators.hpp"
#include "fairdiv/oracle.hpp"
#include "fairdiv/protocols.hpp"
#include "fairdiv/valuation.hpp"

using namespace fairdiv;

namespace {

Rational R(long a, long b = 1) { return Rational(a, b); }

Instance step_instance() {
    return Instance{{Valuation({R(0), R(1, 3), R(1)}, {R(3, 2), R(3, 4)})}};
}

}  // namespace

TEST(RwEval, Examples) {
    Oracle honest = Oracle::honest(uniform_instance(1));
    EXPECT_EQ(honest.eval(0, Interval(0, R(1, 4))), R(1, 4));
    EXPECT_EQ(honest.ledger().counts(0).eval, 1u);

    Oracle adv = Oracle::adversary(2);
    EXPECT_EQ(adv.eval(1, Interval(R(1, 5), R(1, 2))), R(3, 10));

    Oracle step = Oracle::honest(step_instance());
    EXPECT_EQ(step.eval(0, Interval(0, R(2, 3))), R(3, 4));
    EXPECT_THROW(step.eval(0, Interval(R(1, 2), R(2))), DomainError);
}

TEST(RwCut, Examples) {
    Oracle adv = Oracle::adversary(1);
    EXPECT_EQ(adv.cut(0, R(1, 3), R(1, 3)), R(2, 3));
    EXPECT_THROW(adv.cut(0, R(2, 3), R(1, 2)), InsufficientValue);

    Oracle honest = Oracle::honest(uniform_instance(1));
    EXPECT_EQ(honest.cut(0, 0, R(1, 2)), R(1, 2));
    EXPECT_EQ(honest.ledger().counts(0).cut, 1u);
    EXPECT_TRUE(honest.ledger().registered_cuts().contains(R(1, 2)));
    EXPECT_THROW(honest.cut(0, R(1, 2), R(3, 4)), InsufficientValue);
}

TEST(RegisterCut, Charges) {
    Oracle o = Oracle::honest(uniform_instance(3));
    EXPECT_EQ(o.register_cut(R(1, 3)), 3u);
    EXPECT_EQ(o.ledger().total_actual(), 3u);
    EXPECT_EQ(o.register_cut(R(1, 3)), 0u);
    EXPECT_EQ(o.register_cut(R(0)), 0u);
    EXPECT_EQ(o.ledger().total_actual(), 3u);
    EXPECT_EQ(o.register_cut(R(1, 6)), 3u);
    EXPECT_EQ(o.ledger().total_actual(), 6u);
    EXPECT_EQ(o.charges().fresh_registrations, 2u);
    EXPECT_EQ(o.charges().max_register_charge, 3u);
    EXPECT_EQ(o.known_value(1, Interval(R(1, 6), R(1, 3))), R(1, 6));
}

TEST(SuperEval, Charges) {
    Oracle o = Oracle::honest(uniform_instance(1));
    for (const Rational& x : {R(1, 4), R(1, 2), R(3, 4)}) o.register_cut(x);
    const Piece p{Interval(0, R(1, 4)), Interval(R(1, 2), R(3, 4))};

    std::uint64_t before = o.ledger().total_actual();
    EXPECT_EQ(o.super_eval(0, p, Interval(R(1, 16), R(1, 8))), R(1, 16));
    EXPECT_EQ(o.ledger().total_actual() - before, 1u);

    before = o.ledger().total_actual();
    EXPECT_EQ(o.super_eval(0, p, Interval(0, 1)), R(1, 2));
    EXPECT_EQ(o.ledger().total_actual() - before, 0u);

    o.register_cut(R(5, 8));
    const Piece q{Interval(0, R(1, 4)), Interval(R(1, 2), R(5, 8)), Interval(R(5, 8), R(3, 4))};
    before = o.ledger().total_actual();
    EXPECT_EQ(o.super_eval(0, q, Interval(R(1, 8), R(11, 16))), R(1, 8) + R(1, 8) + R(1, 16));
    EXPECT_EQ(o.ledger().total_actual() - before, 2u);
    EXPECT_LE(o.charges().max_super_charge, 2u);
}

TEST(SuperEval, UntrackedPieceIsAccountingError) {
    Oracle o = Oracle::honest(uniform_instance(1));
    EXPECT_THROW(o.super_eval(0, Piece{Interval(R(1, 3), R(1, 2))}, Interval(0, 1)), AccountingError);
    EXPECT_THROW(o.known_value(0, Interval(R(1, 3), R(1, 2))), AccountingError);
}

TEST(SuperCut, Examples) {
    Oracle o = Oracle::honest(uniform_instance(1));
    for (const Rational& x : {R(1, 4), R(1, 2), R(3, 4)}) o.register_cut(x);
    const Piece p{Interval(0, R(1, 4)), Interval(R(1, 2), R(3, 4))};

    std::uint64_t before = o.ledger().total_actual();
    EXPECT_EQ(o.super_cut(0, p, 0, R(3, 8)), R(5, 8));
    EXPECT_LE(o.ledger().total_actual() - before, 2u);

    before = o.ledger().total_actual();
    EXPECT_EQ(o.super_cut(0, p, R(1, 8), 0), R(1, 8));
    EXPECT_EQ(o.ledger().total_actual() - before, 0u);

    EXPECT_THROW(o.super_cut(0, p, 0, R(3, 4)), InsufficientValue);

    // Renormalised on p, a half of p is a quarter of the cake.
    EXPECT_EQ(o.super_cut(0, p, 0, R(1, 2), &p), R(1, 4));
}

TEST(SuperCut, ContiguousPieceIsPlainCut) {
    Oracle o = Oracle::honest(step_instance());
    const std::uint64_t before = o.ledger().total_actual();
    EXPECT_EQ(o.super_cut(0, Piece::whole(), 0, R(1, 2)), R(1, 3));
    EXPECT_LE(o.ledger().total_actual() - before, 2u);
}

TEST(Adversary, EvalSplitsActivePartition) {
    Oracle o = Oracle::adversary(2);
    EXPECT_EQ(o.active_partitions()[0].size(), 1u);
    o.eval(0, Interval(R(1, 4), R(3, 4)));
    ASSERT_EQ(o.active_partitions()[0].size(), 3u);
    EXPECT_EQ(o.active_partitions()[0].intervals()[1], Interval(R(1, 4), R(3, 4)));
    EXPECT_EQ(o.active_partitions()[1].size(), 1u);
    ASSERT_EQ(o.partition_history().size(), 1u);
    EXPECT_EQ(o.partition_history()[0].after - o.partition_history()[0].before, 2u);
    o.cut(0, R(1, 4), R(1, 8));
    EXPECT_EQ(o.active_partitions()[0].size(), 4u);
}

TEST(Audit, TrackedValuesMatchTruth) {
    Rng rng(default_seed(21));
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = rng.between(1, 5);
        Oracle o = Oracle::honest(random_piecewise_instance(n, rng.below(1u << 30)));
        o.set_audit(true);
        for (int k = 0; k < 20; ++k) o.register_cut(R(static_cast<long>(rng.between(1, 239)), 240));
        EXPECT_TRUE(o.audit());
        EXPECT_EQ(o.audited_updates(), o.charges().fresh_registrations);
        Rational total;
        for (const auto& iv : o.ledger().tracked_intervals()) total += iv.length();
        EXPECT_EQ(total, R(1));
    }
}

TEST(SuperQueries, RandomChargesStayWithinTwo) {
    Rng rng(default_seed(22));
    for (int trial = 0; trial < 40; ++trial) {
        const Instance inst = random_piecewise_instance(3, rng.below(1u << 30));
        Oracle o = Oracle::honest(inst);
        std::vector<Rational> pts;
        for (int k = 0; k < 8; ++k) {
            pts.push_back(R(static_cast<long>(rng.between(1, 59)), 60));
            o.register_cut(pts.back());
        }
        std::vector<Interval> ivs;
        for (const auto& iv : o.ledger().tracked_intervals()) {
            if (rng.coin()) ivs.push_back(iv);
        }
        const Piece p(ivs);
        if (p.empty()) continue;
        for (AgentId i = 0; i < 3; ++i) {
            const Rational a = R(static_cast<long>(rng.below(121)), 120);
            const Rational b = max(a, R(static_cast<long>(rng.below(121)), 120));
            const std::uint64_t before = o.ledger().total_actual();
            const Rational got = o.super_eval(i, p, Interval(a, b));
            EXPECT_LE(o.ledger().total_actual() - before, 2u);
            EXPECT_EQ(got, inst[i].eval_piece(p.clip(a, b)));

            const Rational avail = inst[i].eval_piece(p.clip(a, 1));
            const Rational val = avail * R(static_cast<long>(rng.below(5)), 4);
            const std::uint64_t before_cut = o.ledger().total_actual();
            const Rational mark = o.super_cut(i, p, a, val);
            EXPECT_LE(o.ledger().total_actual() - before_cut, 2u);
            EXPECT_EQ(inst[i].eval_piece(p.clip(a, mark)), val);
        }
        EXPECT_LE(o.charges().max_super_charge, 2u);
    }
}

TEST(Determinism, IdenticalRunsGiveIdenticalLedgers) {
    const Instance inst = random_piecewise_instance(4, 77);
    Oracle a = Oracle::honest(inst);
    Oracle b = Oracle::honest(inst);
    const ProtocolResult ra = algorithm1_chb_n(a);
    const ProtocolResult rb = algorithm1_chb_n(b);
    EXPECT_EQ(ra.ledger, rb.ledger);
    EXPECT_EQ(ra.allocation, rb.allocation);
}

TEST(Adversary, AgreesWithHonestOnUniformInstances) {
    for (std::size_t n : {2, 3, 5, 8}) {
        for (const std::string name : {"even-paz", "last-dim", "alg1"}) {
            const ProtocolFn fn = protocol_by_name(name);
            Oracle honest = Oracle::honest(uniform_instance(n));
            Oracle adv = Oracle::adversary(n);
            const ProtocolResult rh = fn(honest);
            const ProtocolResult ra = fn(adv);
            EXPECT_EQ(rh.allocation, ra.allocation) << name << " n=" << n;
            EXPECT_EQ(rh.ledger, ra.ledger) << name << " n=" << n;
        }
    }
}
