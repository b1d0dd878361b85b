#include <gtest/gtest.h>

#include <random>

#include "support/naive.hpp"
#include "support/random_patterns.hpp"
#include "support/text.hpp"
#include "varpat/onerep.hpp"
#include "varpat/unary.hpp"

using namespace varpat;
using naive::pat;
using naive::var_of;
using naive::word;

namespace {

bool is_factor(const Word& w, const Word& u) {
    if (u.size() > w.size()) return false;
    for (std::size_t i = 0; i + u.size() <= w.size(); ++i)
        if (std::equal(u.begin(), u.end(), w.begin() + static_cast<std::ptrdiff_t>(i))) return true;
    return false;
}

}  // namespace

TEST(RepeatedVariable, Detection) {
    const Pattern a = pat("{x}{y}{x}");
    EXPECT_EQ(repeated_variable(a), var_of(a, "x"));
    EXPECT_FALSE(repeated_variable(pat("{x}a{y}")).has_value());
    EXPECT_THROW(repeated_variable(pat("{x}{y}{x}{y}")), NotOneRepVar);
}

TEST(DecomposeOneRep, BlocksAndGaps) {
    const Pattern a = pat("ab{x}{y}ab{z}{x}{x}baab{v}");
    const OneRepDecomposition d = decompose_onerep(a, var_of(a, "x"));
    ASSERT_EQ(d.blocks.size(), 2u);
    EXPECT_EQ(d.blocks[0], (std::pair<std::size_t, std::size_t>{0, 3}));   // a b x
    EXPECT_EQ(d.blocks[1], (std::pair<std::size_t, std::size_t>{7, 13}));  // x x b a a b
    ASSERT_EQ(d.gaps.size(), 3u);
    EXPECT_EQ(d.gaps[1], (std::pair<std::size_t, std::size_t>{3, 7}));     // y a b z
    EXPECT_EQ(d.gaps[2], (std::pair<std::size_t, std::size_t>{13, 14}));   // v
}

TEST(MinMismatch1RepVar, Examples) {
    const Pattern xyx = pat("{x}{y}{x}");
    const MatchResult r = min_mismatch_1repvar(word("abcab"), xyx);
    EXPECT_EQ(r.distance, Distance(0));
    EXPECT_EQ(substitution_distance(xyx, r.witness, word("abcab")), Distance(0));
    // The planted image also matches exactly.
    const Substitution planted{{var_of(xyx, "x"), word("ab")}, {var_of(xyx, "y"), word("c")}};
    EXPECT_EQ(substitution_distance(xyx, planted, word("abcab")), Distance(0));

    EXPECT_EQ(min_mismatch_1repvar(word("abab"), pat("a{x}{x}b")).distance, Distance(1));
    EXPECT_EQ(naive::min_distance(pat("a{x}{x}b"), word("abab")), 1u);
}

TEST(MinMismatch1RepVar, RandomAgainstBruteForce) {
    std::mt19937_64 rng(51);
    for (int it = 0; it < 3000; ++it) {
        const Word w = naive::random_word(rng, rng() % 11, 1 + rng() % 3);
        const Pattern alpha = naive::random_onerep(rng, 2 + rng() % 6, 2 + rng() % 2);
        const MatchResult r = min_mismatch_1repvar(w, alpha);
        ASSERT_EQ(r.distance.value_or(naive::kInf), naive::min_distance(alpha, w)) << it;
        if (r.distance.is_finite()) {
            ASSERT_EQ(substitution_distance(alpha, r.witness, w), r.distance) << it;
        }
    }
}

TEST(MinMismatch1RepVar, UnaryEqualsOneVar) {
    std::mt19937_64 rng(52);
    for (int it = 0; it < 1000; ++it) {
        const Word w = naive::random_word(rng, rng() % 16, 2);
        const Pattern alpha = naive::random_unary(rng, 1 + rng() % 7, 2);
        ASSERT_EQ(min_mismatch_1repvar(w, alpha).distance, min_mismatch_1var(w, alpha).distance) << it;
    }
}

TEST(MinMismatch1RepVar, RegularInputsUseRegularPath) {
    const Pattern alpha = pat("{x}ab{y}");
    EXPECT_EQ(min_mismatch_1repvar(word("bb"), alpha).distance, Distance(1));
}

TEST(Approx2, ExactMatchGivesZero) {
    const Pattern alpha = pat("a{x}b{y}{x}");
    const Word w = word("aabbcccab");  // x = ab, y = ccc
    EXPECT_EQ(min_mismatch_1repvar(w, alpha).distance, Distance(0));
    EXPECT_EQ(approx2_1repvar(w, alpha).distance, Distance(0));
    EXPECT_EQ(ptas_1repvar(w, alpha).distance, Distance(0));
}

TEST(Approx2, BoundsAgainstBruteForce) {
    std::mt19937_64 rng(53);
    std::size_t factor_cases = 0;
    for (int it = 0; it < 1500; ++it) {
        const Word w = naive::random_word(rng, rng() % 11, 2);
        const Pattern alpha = naive::random_onerep(rng, 2 + rng() % 5, 2);
        Substitution best;
        const std::uint64_t opt = naive::min_distance(alpha, w, naive::alphabet_of(alpha, w), &best);
        const MatchResult a = approx2_1repvar(w, alpha);
        if (opt == naive::kInf) {
            ASSERT_TRUE(a.distance.is_infinite()) << it;
            continue;
        }
        ASSERT_GE(a.distance.value(), opt) << it;
        ASSERT_LE(a.distance.value(), 2 * opt) << it;
        ASSERT_EQ(substitution_distance(alpha, a.witness, w), a.distance) << it;
        const VarId x = *repeated_variable(alpha);
        if (is_factor(w, best.at(x))) {
            ++factor_cases;
            ASSERT_EQ(a.distance.value(), opt) << it;
        }
    }
    EXPECT_GT(factor_cases, 100u);
}

TEST(Ptas, SingleSampleMatchesApprox2) {
    std::mt19937_64 rng(54);
    for (int it = 0; it < 500; ++it) {
        const Word w = naive::random_word(rng, rng() % 10, 2);
        const Pattern alpha = naive::random_onerep(rng, 2 + rng() % 5, 2);
        const MatchResult p = ptas_1repvar(w, alpha, PtasConfig{1, false});
        ASSERT_EQ(p.distance, approx2_1repvar(w, alpha).distance) << it;
    }
}

TEST(Ptas, RatioAgainstBruteForce) {
    std::mt19937_64 rng(55);
    for (int it = 0; it < 800; ++it) {
        const Word w = naive::random_word(rng, rng() % 11, 2);
        const Pattern alpha = naive::random_onerep(rng, 2 + rng() % 5, 2);
        const std::uint64_t opt = naive::min_distance(alpha, w);
        const MatchResult p = ptas_1repvar(w, alpha, PtasConfig{3, true});
        if (opt == naive::kInf) {
            ASSERT_TRUE(p.distance.is_infinite());
            continue;
        }
        ASSERT_GE(p.distance.value(), opt) << it;
        ASSERT_LE(p.distance.value(), 2 * opt) << it;
        ASSERT_EQ(substitution_distance(alpha, p.witness, w), p.distance) << it;
    }
    EXPECT_THROW(ptas_1repvar(word("ab"), pat("{x}{x}"), PtasConfig{0, true}), std::invalid_argument);
}

TEST(Ptas, RatioFormula) {
    EXPECT_DOUBLE_EQ(ptas_ratio(3, 2), 2.0);
    EXPECT_LT(ptas_ratio(1000, 2), 1.1);
    EXPECT_GT(ptas_ratio(1000, 2), 1.0);
    EXPECT_DOUBLE_EQ(ptas_ratio(2, 3), 2.0);
    EXPECT_DOUBLE_EQ(ptas_ratio(5, 1), 1.0);
}
