#include <gtest/gtest.h>

#include <set>

#include "fairdiv/generators.hpp"
#include "fairdiv/valuation.hpp"

using namespace fairdiv;

namespace {

Rational R(long a, long b = 1) { return Rational(a, b); }

// Membership oracle over a 1/240 grid of midpoints: a point set view of a
// piece that does not depend on the interval merge logic.
std::set<long> grid_points(const Piece& p) {
    std::set<long> out;
    for (long k = 0; k < 240; ++k) {
        if (p.contains(R(2 * k + 1, 480))) out.insert(k);
    }
    return out;
}

Piece random_piece(Rng& rng) {
    std::vector<Interval> ivs;
    const std::size_t count = rng.below(4);
    for (std::size_t c = 0; c < count; ++c) {
        long a = static_cast<long>(rng.below(25));
        long b = static_cast<long>(rng.below(25));
        if (a > b) std::swap(a, b);
        ivs.emplace_back(R(a, 24), R(b, 24));
    }
    return Piece(ivs);
}

}  // namespace

TEST(Piece, CanonicalMerge) {
    const Piece p{Interval(R(1, 2), 1), Interval(0, R(1, 2)), Interval(R(1, 4), R(1, 4))};
    ASSERT_EQ(p.size(), 1u);
    EXPECT_EQ(p, Piece::whole());
}

TEST(Union, Examples) {
    EXPECT_EQ(unite(Piece{Interval(0, R(1, 2))}, Piece{Interval(R(1, 2), 1)}), Piece::whole());
    const Piece p{Interval(R(1, 5), R(2, 5))};
    EXPECT_EQ(unite(p, Piece{}), p);
    EXPECT_EQ(unite(Piece{Interval(0, R(1, 4)), Interval(R(1, 2), R(3, 4))}, Piece{Interval(R(1, 8), R(5, 8))}),
              Piece{Interval(0, R(3, 4))});
}

TEST(Complement, Examples) {
    EXPECT_EQ(complement(Piece{}), Piece::whole());
    EXPECT_EQ(complement(Piece::whole()), Piece{});
    EXPECT_EQ(complement(Piece{Interval(R(1, 4), R(1, 2))}), (Piece{Interval(0, R(1, 4)), Interval(R(1, 2), 1)}));
}

TEST(Bundle, Examples) {
    const Allocation a{{Piece{Interval(0, R(1, 3))}, Piece{Interval(R(1, 3), R(2, 3))}, Piece{Interval(R(2, 3), 1)}}};
    EXPECT_EQ(bundle(a, {1}), a[1]);
    EXPECT_EQ(bundle(a, {0, 1, 2}), Piece::whole());
    EXPECT_EQ(bundle(a, {0, 2}), (Piece{Interval(0, R(1, 3)), Interval(R(2, 3), 1)}));
    EXPECT_THROW(bundle(a, {3}), std::out_of_range);
}

TEST(Validate, Examples) {
    const Allocation split{{Piece{Interval(0, R(1, 2))}, Piece{Interval(R(1, 2), 1)}}};
    EXPECT_TRUE(validate(split, true).ok());

    const Allocation overlap{{Piece{Interval(0, R(2, 3))}, Piece{Interval(R(1, 2), 1)}}};
    const ValidationReport o = validate(overlap, true);
    EXPECT_EQ(o.status, ValidationReport::Status::overlap);
    ASSERT_TRUE(o.witness.has_value());
    EXPECT_EQ(*o.witness, Interval(R(1, 2), R(2, 3)));

    const Allocation gap{{Piece{Interval(0, R(1, 3))}, Piece{Interval(R(1, 2), 1)}}};
    const ValidationReport g = validate(gap, true);
    EXPECT_EQ(g.status, ValidationReport::Status::incomplete);
    EXPECT_EQ(*g.witness, Interval(R(1, 3), R(1, 2)));
    EXPECT_TRUE(validate(gap, false).ok());
}

TEST(ValueMatrix, SizeMismatch) {
    const Allocation split{{Piece{Interval(0, R(1, 2))}, Piece{Interval(R(1, 2), 1)}}};
    EXPECT_THROW(value_matrix(uniform_instance(3), split), std::invalid_argument);
}

TEST(PieceProperties, SetAlgebraMatchesPointSets) {
    Rng rng(default_seed(11));
    for (int trial = 0; trial < 500; ++trial) {
        const Piece p = random_piece(rng);
        const Piece q = random_piece(rng);
        const Piece r = random_piece(rng);
        EXPECT_EQ(complement(complement(p)), p);
        EXPECT_EQ(unite(p, q), unite(q, p));
        EXPECT_EQ(unite(unite(p, q), r), unite(p, unite(q, r)));
        EXPECT_EQ(unite(p, p), p);

        const auto gp = grid_points(p);
        const auto gq = grid_points(q);
        std::set<long> u = gp;
        u.insert(gq.begin(), gq.end());
        EXPECT_EQ(grid_points(unite(p, q)), u);
        std::set<long> in;
        for (long k : gp) {
            if (gq.contains(k)) in.insert(k);
        }
        EXPECT_EQ(grid_points(intersect(p, q)), in);
        std::set<long> diff;
        for (long k : gp) {
            if (!gq.contains(k)) diff.insert(k);
        }
        EXPECT_EQ(grid_points(subtract(p, q)), diff);
        EXPECT_EQ(p.length() + complement(p).length(), R(1));
    }
}

TEST(PieceProperties, BundleAndComplementSumToOne) {
    Rng rng(default_seed(12));
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = rng.between(2, 6);
        const Allocation a = random_allocation(n, rng);
        ASSERT_TRUE(validate(a, true).ok());
        const Valuation v = random_piecewise_valuation(rng);
        std::vector<AgentId> s;
        for (AgentId i = 0; i < n; ++i) {
            if (rng.coin()) s.push_back(i);
        }
        const Piece b = bundle(a, s);
        EXPECT_EQ(v.eval_piece(b) + v.eval_piece(complement(b)), R(1));
    }
}
