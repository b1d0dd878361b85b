#include <gtest/gtest.h>

#include "support/text.hpp"
#include "varpat/core.hpp"

using namespace varpat;
using naive::pat;
using naive::var_of;
using naive::word;

TEST(ApplySubstitution, RepeatedVariablesAroundTerminals) {
    const Pattern alpha = pat("{x1}{x1}bab{x2}{x2}");
    const Substitution h{{var_of(alpha, "x1"), word("aa")}, {var_of(alpha, "x2"), word("b")}};
    EXPECT_EQ(apply_substitution(alpha, h), word("aaaababbb"));
}

TEST(ApplySubstitution, TerminalOnlyAndEmptyImages) {
    EXPECT_EQ(apply_substitution(pat("ab"), {}), word("ab"));
    const Pattern xax = pat("{x}a{x}");
    EXPECT_EQ(apply_substitution(xax, {{var_of(xax, "x"), Word{}}}), word("a"));
}

TEST(ApplySubstitution, MissingImageThrows) {
    const Pattern alpha = pat("{x}a{y}");
    EXPECT_THROW(apply_substitution(alpha, {{var_of(alpha, "x"), word("a")}}), MissingVariable);
}

TEST(HammingDistance, Examples) {
    EXPECT_EQ(hamming_distance(word("abc"), word("abc")), 0u);
    EXPECT_EQ(hamming_distance(word("100"), word("011")), 3u);
    EXPECT_EQ(hamming_distance(word("001"), word("000")), 1u);
    EXPECT_THROW(hamming_distance(word("ab"), word("abc")), LengthMismatch);
}

TEST(SubstitutionDistance, LengthDifferenceIsInfinite) {
    const Pattern alpha = pat("{x}b");
    EXPECT_EQ(substitution_distance(alpha, {{var_of(alpha, "x"), word("a")}}, word("ab")), Distance(0));
    EXPECT_EQ(substitution_distance(alpha, {{var_of(alpha, "x"), word("a")}}, word("abc")), Distance::infinite());
}

TEST(PeelAffixes, Examples) {
    const PeeledInstance a = peel_affixes(pat("a{x}b"), word("aab"));
    ASSERT_TRUE(a.feasible);
    EXPECT_EQ(a.core_pattern, pat("{x}"));
    EXPECT_EQ(a.core_word, word("a"));
    EXPECT_EQ(a.affix_mismatches, 0u);

    const PeeledInstance b = peel_affixes(pat("b{x}b"), word("aab"));
    ASSERT_TRUE(b.feasible);
    EXPECT_EQ(b.core_word, word("a"));
    EXPECT_EQ(b.affix_mismatches, 1u);

    EXPECT_FALSE(peel_affixes(pat("aba"), word("ab")).feasible);
    EXPECT_FALSE(peel_affixes(pat("ab{x}ba"), word("aba")).feasible);
}

TEST(PeelAffixes, TerminalOnlyPatternOfMatchingLength) {
    const PeeledInstance p = peel_affixes(pat("abba"), word("abab"));
    ASSERT_TRUE(p.feasible);
    EXPECT_TRUE(p.core_pattern.empty());
    EXPECT_EQ(p.affix_mismatches, 2u);
}

TEST(Pattern, VariablesInFirstOccurrenceOrder) {
    const Pattern alpha = pat("ab{y}{x}{y}c{z}{x}");
    const auto vars = alpha.variables();
    ASSERT_EQ(vars.size(), 3u);
    EXPECT_EQ(alpha.name(vars[0]), "y");
    EXPECT_EQ(alpha.name(vars[1]), "x");
    EXPECT_EQ(alpha.name(vars[2]), "z");
    EXPECT_EQ(alpha.occurrences(var_of(alpha, "y")), 2u);
    EXPECT_EQ(alpha.terminal_count(), 3u);
}

TEST(Distance, InfiniteArithmetic) {
    EXPECT_TRUE((Distance(3) + Distance::infinite()).is_infinite());
    EXPECT_EQ(Distance(2) + Distance(5), Distance(7));
    EXPECT_LT(Distance(1000), Distance::infinite());
    EXPECT_EQ(Distance::infinite().to_string(), "inf");
    EXPECT_THROW((void)Distance::infinite().value(), std::logic_error);
}

TEST(Factor, OneBasedInclusive) {
    const Word w = word("abcd");
    const WordView f = factor(w, 2, 3);
    EXPECT_EQ(Word(f.begin(), f.end()), word("bc"));
    EXPECT_TRUE(factor(w, 3, 2).empty());
    EXPECT_THROW(factor(w, 0, 1), std::out_of_range);
}
