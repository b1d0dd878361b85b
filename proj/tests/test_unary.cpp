#include <gtest/gtest.h>

#include <random>

#include "support/naive.hpp"
#include "support/random_patterns.hpp"
#include "support/text.hpp"
#include "varpat/unary.hpp"

using namespace varpat;
using naive::pat;
using naive::word;

namespace {

/// Exhaustive minimum of sum d_HAM(s, u) over all strings s over `letters`.
std::uint64_t exhaustive_median(const std::vector<Word>& words, const std::vector<Letter>& letters) {
    const std::size_t m = words.front().size();
    std::uint64_t best = naive::kInf;
    std::vector<std::size_t> digit(m, 0);
    while (true) {
        std::uint64_t total = 0;
        for (const Word& u : words)
            for (std::size_t c = 0; c < m; ++c) total += (letters[digit[c]] != u[c]);
        best = std::min(best, total);
        std::size_t c = 0;
        while (c < m && ++digit[c] == letters.size()) digit[c++] = 0;
        if (c == m) break;
    }
    return best;
}

}  // namespace

TEST(MedianString, Examples) {
    const MedianResult one = median_string({word("ab")});
    EXPECT_EQ(one.median, word("ab"));
    EXPECT_EQ(one.total_distance, 0u);

    const MedianResult three = median_string({word("ab"), word("ab"), word("bb")});
    EXPECT_EQ(three.median, word("ab"));
    EXPECT_EQ(three.total_distance, 1u);

    const MedianResult tie = median_string({word("01"), word("10")});
    EXPECT_EQ(tie.total_distance, 2u);
    EXPECT_EQ(tie.median, word("00"));
}

TEST(MedianString, Errors) {
    EXPECT_THROW(median_string({}), std::invalid_argument);
    EXPECT_THROW(median_string({word("ab"), word("a")}), LengthMismatch);
}

TEST(MedianString, MatchesExhaustiveSearch) {
    std::mt19937_64 rng(4);
    for (int it = 0; it < 500; ++it) {
        const Letter sigma = 1 + rng() % 3;
        const std::size_t m = rng() % 5;
        std::vector<Word> words(1 + rng() % 5);
        for (Word& u : words) u = naive::random_word(rng, m, sigma);
        std::vector<Letter> letters;
        for (Letter a = 1; a <= sigma; ++a) letters.push_back(a);
        const MedianResult r = median_string(words);
        ASSERT_EQ(r.total_distance, exhaustive_median(words, letters)) << it;
        std::uint64_t check = 0;
        for (const Word& u : words) check += hamming_distance(r.median, u);
        ASSERT_EQ(check, r.total_distance) << it;
    }
}

TEST(MinMismatch1Var, Examples) {
    const UnaryResult a1 = min_mismatch_1var(word("abcabccbaab"), pat("ab{x}ab{x}{x}baab"));
    EXPECT_EQ(a1.distance, Distance(0));
    EXPECT_EQ(a1.image, word("c"));

    EXPECT_EQ(min_mismatch_1var(word("aba"), pat("{x}{x}")).distance, Distance::infinite());

    const UnaryResult xx = min_mismatch_1var(word("abaa"), pat("{x}{x}"));
    EXPECT_EQ(xx.distance, Distance(1));
    EXPECT_EQ(xx.image, word("aa"));
}

TEST(MinMismatch1Var, RejectsOtherClasses) {
    EXPECT_THROW(min_mismatch_1var(word("ab"), pat("{x}{y}")), UnsupportedClass);
    EXPECT_THROW(min_mismatch_1var(word("ab"), pat("ab")), UnsupportedClass);
}

TEST(MinMismatch1Var, RandomAgainstBruteForce) {
    std::mt19937_64 rng(9);
    for (int it = 0; it < 2000; ++it) {
        const Word w = naive::random_word(rng, rng() % 12, 1 + rng() % 3);
        const Pattern alpha = naive::random_unary(rng, 1 + rng() % 6, 3);
        const UnaryResult r = min_mismatch_1var(w, alpha);
        ASSERT_EQ(r.distance.value_or(naive::kInf), naive::min_distance(alpha, w)) << it;
        if (r.distance.is_finite()) {
            const Substitution h{{alpha.variables().front(), r.image}};
            ASSERT_EQ(substitution_distance(alpha, h, w), r.distance) << it;
        }
    }
}

TEST(OptimalUnaryAssignment, Examples) {
    const UnaryResult single = optimal_unary_assignment({pat("{x}")}, {word("ab")}, 2);
    EXPECT_EQ(single.image, word("ab"));
    EXPECT_EQ(single.distance, Distance(0));

    // Both windows read "b"; the terminals agree with their targets.
    const UnaryResult pair = optimal_unary_assignment({pat("{x}a"), pat("a{x}")}, {word("ba"), word("ab")}, 1);
    EXPECT_EQ(pair.image, word("b"));
    EXPECT_EQ(pair.distance, Distance(0));

    const UnaryResult two = optimal_unary_assignment({pat("{x}"), pat("{x}")}, {word("01"), word("10")}, 2);
    EXPECT_EQ(two.distance, Distance(2));
}

TEST(OptimalUnaryAssignment, Errors) {
    EXPECT_THROW(optimal_unary_assignment({pat("{x}a")}, {word("ab")}, 2), LengthInfeasible);
    const Pattern xy = pat("{x}{y}");
    EXPECT_THROW(optimal_unary_assignment({xy.slice(0, 1), xy.slice(1, 2)}, {word("a"), word("b")}, 1),
                 UnsupportedClass);
    EXPECT_THROW(optimal_unary_assignment({pat("{x}")}, {}, 1), std::invalid_argument);
}
