#include <gtest/gtest.h>

#include <random>

#include "support/naive.hpp"
#include "support/random_patterns.hpp"
#include "support/text.hpp"
#include "varpat/classify.hpp"
#include "varpat/klocal.hpp"
#include "varpat/noncross.hpp"
#include "varpat/unary.hpp"

using namespace varpat;
using naive::pat;
using naive::var_of;
using naive::word;

namespace {

MatchResult solve(const Word& w, const Pattern& alpha) {
    return min_mismatch_klocal(w, alpha, classify(alpha).marking);
}

}  // namespace

TEST(KLocal, Examples) {
    const Pattern xyxy = pat("{x}{y}{x}{y}");
    const MarkingSequence seq{{var_of(xyxy, "x"), var_of(xyxy, "y")}, 2};
    EXPECT_EQ(min_mismatch_klocal(word("abab"), xyxy, seq).distance, Distance(0));
    EXPECT_EQ(min_mismatch_klocal(word("abba"), xyxy, seq).distance, Distance(2));
    EXPECT_EQ(naive::min_distance(xyxy, word("abba")), 2u);
    EXPECT_EQ(min_mismatch_klocal(word("abc"), xyxy, seq).distance,
              Distance(naive::min_distance(xyxy, word("abc"))));

    const Pattern ground = pat("ab");
    EXPECT_EQ(min_mismatch_klocal(word("aa"), ground, MarkingSequence{}).distance, Distance(1));
    EXPECT_TRUE(min_mismatch_klocal(word("a"), ground, MarkingSequence{}).distance.is_infinite());
    EXPECT_TRUE(min_mismatch_klocal(word("a"), pat("a{x}b"), classify(pat("a{x}b")).marking).distance.is_infinite());
}

TEST(KLocal, WitnessReproducesDistance) {
    const Pattern alpha = pat("a{x}{y}b{x}{y}");
    const Word w = word("abbabbab");
    const MatchResult r = solve(w, alpha);
    EXPECT_EQ(r.distance.value_or(naive::kInf), naive::min_distance(alpha, w));
    EXPECT_EQ(substitution_distance(alpha, r.witness, w), r.distance);
}

TEST(KLocal, UnaryEqualsOneVar) {
    std::mt19937_64 rng(61);
    for (int it = 0; it < 800; ++it) {
        const Word w = naive::random_word(rng, rng() % 14, 2 + rng() % 2);
        const Pattern alpha = naive::random_unary(rng, 1 + rng() % 6, 2);
        ASSERT_EQ(solve(w, alpha).distance, min_mismatch_1var(w, alpha).distance) << it;
    }
}

TEST(KLocal, NonCrossWithOneBlock) {
    std::mt19937_64 rng(62);
    for (int it = 0; it < 800; ++it) {
        const Word w = naive::random_word(rng, rng() % 12, 2);
        const Pattern alpha = naive::random_noncross(rng, 2 + rng() % 6, 2);
        const MarkingSequence seq{alpha.variables(), 1};
        const MatchResult r = min_mismatch_klocal(w, alpha, seq);
        ASSERT_EQ(r.distance, min_mismatch_noncross(w, alpha).distance) << it;
        if (r.distance.is_finite()) {
            ASSERT_EQ(substitution_distance(alpha, r.witness, w), r.distance) << it;
        }
    }
}

TEST(KLocal, TwoLocalAgainstBruteForce) {
    std::mt19937_64 rng(63);
    std::size_t crossing = 0;
    for (int it = 0; it < 2500; ++it) {
        const Pattern alpha = naive::random_general(rng, 3 + rng() % 6, 2, 3);
        const PatternClass c = classify(alpha);
        if (c.locality > 2) continue;
        crossing += !c.is_noncross;
        const Word w = naive::random_word(rng, rng() % 12, 2);
        const MatchResult r = min_mismatch_klocal(w, alpha, c.marking);
        ASSERT_EQ(r.distance.value_or(naive::kInf), naive::min_distance(alpha, w)) << it;
        if (r.distance.is_finite()) {
            ASSERT_EQ(substitution_distance(alpha, r.witness, w), r.distance) << it;
        }
    }
    EXPECT_GT(crossing, 200u);
}

TEST(KLocal, ThreeLocalAgainstBruteForce) {
    std::mt19937_64 rng(64);
    for (int it = 0; it < 600; ++it) {
        const Pattern alpha = naive::random_general(rng, 4 + rng() % 5, 2, 4);
        const PatternClass c = classify(alpha);
        const Word w = naive::random_word(rng, rng() % 10, 2);
        const MatchResult r = min_mismatch_klocal(w, alpha, c.marking);
        ASSERT_EQ(r.distance.value_or(naive::kInf), naive::min_distance(alpha, w)) << it;
    }
}

TEST(KLocal, RejectsNarrowWitness) {
    const Pattern xyxy = pat("{x}{y}{x}{y}");
    const MarkingSequence narrow{{var_of(xyxy, "x"), var_of(xyxy, "y")}, 1};
    EXPECT_THROW(min_mismatch_klocal(word("abab"), xyxy, narrow), InvalidWitness);
    const MarkingSequence partial{{var_of(xyxy, "x")}, 2};
    EXPECT_THROW(min_mismatch_klocal(word("abab"), xyxy, partial), InvalidWitness);
}

TEST(KLocal, BudgetExceeded) {
    const Pattern xyxy = pat("{x}{y}{x}{y}");
    const Word w(40, 1);
    EXPECT_THROW(min_mismatch_klocal(w, xyxy, classify(xyxy).marking, KLocalOptions{1000}), BudgetExceeded);
    EXPECT_NO_THROW(min_mismatch_klocal(w, xyxy, classify(xyxy).marking));
}
