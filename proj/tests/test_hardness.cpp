#include <gtest/gtest.h>

#include <random>

#include "support/naive.hpp"
#include "varpat/classify.hpp"
#include "varpat/hardness.hpp"
#include "varpat/onerep.hpp"
#include "varpat/regular.hpp"

using namespace varpat;

namespace {

Word letters(std::initializer_list<Letter> l) { return Word(l); }

}  // namespace

TEST(OvGadgets, Coordinates) {
    using namespace ov_letter;
    EXPECT_EQ(ov_gadget_a({1}), letters({b, b, ov_letter::a, one, zero, zero, b, b, b, zero, one, zero}));
    EXPECT_EQ(ov_gadget_a({0}), letters({b, b, ov_letter::a, zero, zero, one, b, b, b, zero, one, zero}));
    EXPECT_EQ(ov_gadget_b({0}), letters({b, b, ov_letter::a, zero, zero, zero}));
    EXPECT_EQ(ov_gadget_b({1}), letters({b, b, ov_letter::a, zero, one, one}));
    EXPECT_EQ(ov_gadget_a({1, 0}).size(), 3 + 3 * 2 + 3 + 3 + 3 * 2 + 3);
}

TEST(OvToReg, SingleOrthogonalPair) {
    const OvInstance ov{{{0}}, {{0}}};
    EXPECT_TRUE(solve_ov_naive(ov));
    const Instance inst = ov_to_reg(ov);
    EXPECT_TRUE(classify(inst.pattern).is_regular);
    ASSERT_TRUE(inst.delta.has_value());
    EXPECT_EQ(*inst.delta, 1u);
    EXPECT_LE(min_mismatch_reg(inst.word, inst.pattern).distance.value_or(naive::kInf), 1u);
}

TEST(OvToReg, DistanceSeparatesAnswers) {
    std::mt19937_64 rng(81);
    std::size_t yes = 0, no = 0;
    for (int it = 0; it < 60; ++it) {
        const std::size_t n = 1 + rng() % 3, d = 1 + rng() % 3;
        const OvInstance ov = random_ov(rng, n, d, 0.6, rng() % 3 == 0);
        const Instance inst = ov_to_reg(ov);
        const Distance dist = min_mismatch_reg(inst.word, inst.pattern).distance;
        ASSERT_EQ(dist, mismatch_reg_dp(inst.word, inst.pattern)) << it;
        if (solve_ov_naive(ov)) {
            ++yes;
            ASSERT_LE(dist.value(), n * (d + 1) - 1) << it;
        } else {
            ++no;
            ASSERT_EQ(dist.value(), n * (d + 1)) << it;
        }
    }
    EXPECT_GT(yes, 0u);
    EXPECT_GT(no, 0u);
}

TEST(OvToReg, RejectsMalformed) {
    EXPECT_THROW(ov_to_reg(OvInstance{}), std::invalid_argument);
    EXPECT_THROW(ov_to_reg(OvInstance{{{0, 1}}, {{0}}}), std::invalid_argument);
    EXPECT_THROW(ov_to_reg(OvInstance{{{2}}, {{0}}}), std::invalid_argument);
}

TEST(SolveOvNaive, Examples) {
    EXPECT_TRUE(solve_ov_naive(OvInstance{{{1, 0}}, {{0, 1}}}));
    EXPECT_FALSE(solve_ov_naive(OvInstance{{{1, 1}}, {{0, 1}}}));
    EXPECT_TRUE(solve_ov_naive(OvInstance{{{1, 1}, {0, 0}}, {{1, 1}, {1, 1}}}));
}

TEST(CpToOneRep, Shape) {
    CpInstance cp;
    cp.strings = {Word{1, 2}};
    cp.m = 1;
    cp.sigma = 2;
    const Instance inst = cp_to_1repvar(cp);
    const Letter a = 3, b = 4;
    Word g1{1, 2};
    for (int r = 0; r < 4; ++r) {
        g1.insert(g1.end(), 4, a);
        g1.insert(g1.end(), 4, b);
    }
    ASSERT_GE(inst.word.size(), g1.size());
    EXPECT_TRUE(std::equal(g1.begin(), g1.end(), inst.word.begin()));
    const PatternClass c = classify(inst.pattern);
    EXPECT_TRUE(c.is_one_rep_var);
    EXPECT_EQ(c.x_block_count, cp.k() + 1);
    EXPECT_EQ(inst.alphabet.names.size(), 7u);
}

TEST(CpToOneRep, OptimumIsShiftedByM) {
    std::mt19937_64 rng(82);
    for (int it = 0; it < 20; ++it) {
        const std::size_t k = 1 + rng() % 2, len = 2 + rng() % 2, m = 1 + rng() % len;
        CpInstance cp = random_cp(rng, k, len, m, 2);
        cp.delta = solve_cp_naive(cp);
        const Instance inst = cp_to_1repvar(cp);
        EXPECT_EQ(classify(inst.pattern).x_block_count, k + 1);
        ASSERT_EQ(min_mismatch_1repvar(inst.word, inst.pattern).distance, Distance(cp.delta + m)) << it;
    }
}

TEST(SolveCpNaive, Examples) {
    CpInstance cp;
    cp.sigma = 2;
    cp.m = 1;
    cp.strings = {Word{1, 1}, Word{2, 2}};
    EXPECT_EQ(solve_cp_naive(cp), 1u);
    cp.strings = {Word{1, 2}, Word{2, 1}};
    EXPECT_EQ(solve_cp_naive(cp), 0u);
    cp.m = 2;
    EXPECT_EQ(solve_cp_naive(cp), 2u);
    EXPECT_THROW(solve_cp_naive(cp, 1), BudgetExceeded);
    cp.m = 3;
    EXPECT_THROW(solve_cp_naive(cp), std::invalid_argument);
}
