#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "pillars/assignment/lap.hpp"

namespace pillars::assignment {
namespace {

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

CostMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, bool integer) {
    std::uniform_int_distribution<int> ints(0, 9);
    std::uniform_real_distribution<double> reals(0.0, 100.0);
    std::vector<double> v(rows * cols);
    for (auto& x : v) x = integer ? double(ints(rng)) : reals(rng);
    return CostMatrix(rows, cols, std::move(v));
}

void expect_valid(const CostMatrix& m, const Matching& match) {
    ASSERT_EQ(match.pairs.size(), std::min(m.rows(), m.cols()));
    std::vector<bool> rows(m.rows()), cols(m.cols());
    double sum = 0;
    for (auto [r, c] : match.pairs) {
        EXPECT_FALSE(rows[r]);
        EXPECT_FALSE(cols[c]);
        rows[r] = cols[c] = true;
        sum += m(r, c);
    }
    EXPECT_DOUBLE_EQ(sum, match.total_cost);
}

TEST(SolveLap, DiagonalOptimum) {
    auto m = CostMatrix::from_rows({{0, 1}, {1, 0}});
    auto r = solve_lap(m);
    EXPECT_EQ(r.pairs, (Pairs{{0, 0}, {1, 1}}));
    EXPECT_EQ(r.total_cost, 0.0);
}

TEST(SolveLap, TwoByTwoEnumerated) {
    // identity 1 + 0 = 1, swap 2 + 3 = 5
    auto r = solve_lap(CostMatrix::from_rows({{1, 2}, {3, 0}}));
    EXPECT_EQ(r.pairs, (Pairs{{0, 0}, {1, 1}}));
    EXPECT_EQ(r.total_cost, 1.0);
}

TEST(SolveLap, SingleRowPicksMinimum) {
    auto r = solve_lap(CostMatrix::from_rows({{5, 2, 9}}));
    EXPECT_EQ(r.pairs, (Pairs{{0, 1}}));
    EXPECT_EQ(r.total_cost, 2.0);
}

TEST(SolveLap, SingleColumnPicksMinimum) {
    auto r = solve_lap(CostMatrix::from_rows({{4}, {1}, {3}}));
    EXPECT_EQ(r.pairs, (Pairs{{1, 0}}));
    EXPECT_EQ(r.total_cost, 1.0);
}

TEST(SolveLap, DegenerateTiesPickLexicographicallySmallest) {
    auto r = solve_lap(CostMatrix::from_rows({{0, 0}, {0, 0}}));
    EXPECT_EQ(r.pairs, (Pairs{{0, 0}, {1, 1}}));
    EXPECT_EQ(r.total_cost, 0.0);
    auto tall = solve_lap(CostMatrix(4, 2, 3.0));
    EXPECT_EQ(tall.pairs, (Pairs{{0, 0}, {1, 1}}));
}

TEST(SolveLap, RejectsNonFiniteAndNegative) {
    EXPECT_THROW(CostMatrix(1, 2, std::vector<double>{1.0, std::nan("")}), InvalidCostMatrix);
    EXPECT_THROW(CostMatrix(1, 1, std::vector<double>{std::numeric_limits<double>::infinity()}), InvalidCostMatrix);
    EXPECT_THROW(CostMatrix(1, 1, std::vector<double>{-1.0}), InvalidCostMatrix);
    EXPECT_THROW(CostMatrix(0, 3), InvalidCostMatrix);
    CostMatrix m(2, 2);
    EXPECT_THROW(m.set(0, 1, std::nan("")), InvalidCostMatrix);
}

TEST(BruteForceLap, OneByOne) {
    auto r = brute_force_lap(CostMatrix(1, 1, 4.5));
    EXPECT_EQ(r.total_cost, 4.5);
    EXPECT_EQ(r.pairs, (Pairs{{0, 0}}));
}

TEST(BruteForceLap, RefusesLargeInputs) {
    EXPECT_THROW(brute_force_lap(CostMatrix(9, 9)), std::invalid_argument);
    EXPECT_NO_THROW(brute_force_lap(CostMatrix(2, 12)));
}

TEST(SolveLapProperty, MatchesBruteForceOnRandomThreeByThree) {
    for (unsigned seed = 0; seed < 1000; ++seed) {
        std::mt19937 rng(seed);
        auto m = random_matrix(rng, 3, 3, seed % 2 == 0);
        auto fast = solve_lap(m);
        auto slow = brute_force_lap(m);
        expect_valid(m, fast);
        ASSERT_NEAR(fast.total_cost, slow.total_cost, 1e-9 * std::max(1.0, slow.total_cost)) << "seed " << seed;
    }
}

TEST(SolveLapProperty, RectangularAndTiedIntegerMatricesAgreeExactly) {
    std::mt19937 rng(42);
    std::uniform_int_distribution<std::size_t> dim(1, 6);
    for (int trial = 0; trial < 400; ++trial) {
        auto m = random_matrix(rng, dim(rng), dim(rng), true);
        auto fast = solve_lap(m);
        auto slow = brute_force_lap(m);
        expect_valid(m, fast);
        ASSERT_EQ(fast.total_cost, slow.total_cost);
        // Both solvers return the lexicographically smallest optimum.
        ASSERT_EQ(fast.pairs, slow.pairs);
    }
}

TEST(SolveLapProperty, RowPermutationPermutesMatching) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 5;
        auto m = random_matrix(rng, n, n, false);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        CostMatrix p(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) p.set(r, c, m(perm[r], c));
        auto a = solve_lap(m);
        auto b = solve_lap(p);
        EXPECT_NEAR(a.total_cost, b.total_cost, 1e-9);
        for (auto [r, c] : b.pairs) {
            auto it = std::find_if(a.pairs.begin(), a.pairs.end(), [&](auto pr) { return pr.first == perm[r]; });
            ASSERT_NE(it, a.pairs.end());
            EXPECT_EQ(it->second, c);
        }
    }
}

TEST(SolveLapProperty, ConstantShiftAddsNTimesConstant) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 4;
        auto m = random_matrix(rng, n, n, true);
        CostMatrix shifted(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) shifted.set(r, c, m(r, c) + 3.0);
        auto a = solve_lap(m);
        auto b = solve_lap(shifted);
        EXPECT_EQ(b.total_cost, a.total_cost + 3.0 * n);
        EXPECT_EQ(a.pairs, b.pairs);
    }
}

TEST(LapjvCore, SquareAssignmentIsOptimalWithoutTieBreak) {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + trial % 7;
        auto m = random_matrix(rng, n, n, trial % 3 == 0);
        std::vector<double> flat;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) flat.push_back(m(r, c));
        auto x = detail::lapjv_square(flat, n);
        std::vector<bool> used(n);
        double cost = 0;
        for (std::size_t r = 0; r < n; ++r) {
            ASSERT_LT(x[r], n);
            ASSERT_FALSE(used[x[r]]);
            used[x[r]] = true;
            cost += m(r, x[r]);
        }
        ASSERT_NEAR(cost, brute_force_lap(m).total_cost, 1e-9 * 700) << "trial " << trial;
    }
}

TEST(SolveLapProperty, LargerMatricesStayOptimalAgainstBruteForce) {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        auto m = random_matrix(rng, 7, 7, trial % 2 == 0);
        ASSERT_NEAR(solve_lap(m).total_cost, brute_force_lap(m).total_cost, 1e-9 * 700);
    }
}


// Exhaustive (primary, secondary) minimum over maximal injections.
std::pair<double, double> brute_lexicographic(const CostMatrix& p, const CostMatrix& s) {
    const bool tall = p.rows() > p.cols();
    const std::size_t small = std::min(p.rows(), p.cols()), big = std::max(p.rows(), p.cols());
    std::vector<std::size_t> pick(big);
    std::iota(pick.begin(), pick.end(), 0);
    std::pair<double, double> best{1e300, 1e300};
    do {
        double a = 0, b = 0;
        for (std::size_t k = 0; k < small; ++k) {
            const auto r = tall ? pick[k] : k, c = tall ? k : pick[k];
            a += p(r, c);
            b += s(r, c);
        }
        if (a < best.first - 1e-9 || (std::abs(a - best.first) <= 1e-9 && b < best.second)) best = {a, b};
    } while (std::next_permutation(pick.begin(), pick.end()));
    return best;
}

TEST(SolveLapLexicographic, MatchesExhaustiveSearch) {
    std::mt19937 rng(314);
    std::uniform_int_distribution<std::size_t> dim(1, 5);
    for (int trial = 0; trial < 300; ++trial) {
        const auto r = dim(rng), c = dim(rng);
        auto p = random_matrix(rng, r, c, true);
        auto s = random_matrix(rng, r, c, trial % 2 == 0);
        auto got = solve_lap_lexicographic(p, s);
        expect_valid(p, got);
        double sec = 0;
        for (auto [i, j] : got.pairs) sec += s(i, j);
        auto want = brute_lexicographic(p, s);
        ASSERT_EQ(got.total_cost, want.first) << "trial " << trial;
        ASSERT_NEAR(sec, want.second, 1e-9) << "trial " << trial;
    }
}

TEST(SolveLapLexicographic, SecondaryBreaksPrimaryTies) {
    // Both matchings cost 2; the anti-diagonal has the lower secondary.
    auto p = CostMatrix::from_rows({{1, 1}, {1, 1}});
    auto s = CostMatrix::from_rows({{5, 0}, {0, 5}});
    EXPECT_EQ(solve_lap_lexicographic(p, s).pairs, (Pairs{{0, 1}, {1, 0}}));
    EXPECT_THROW(solve_lap_lexicographic(p, CostMatrix(2, 3)), InvalidCostMatrix);
}

}  // namespace
}  // namespace pillars::assignment
