#include <gtest/gtest.h>

#include "varpat/classify.hpp"
#include "varpat/random.hpp"

using namespace varpat;

TEST(RandomPattern, ClassesHold) {
    std::mt19937_64 rng(91);
    for (int it = 0; it < 400; ++it) {
        const std::size_t len = 2 + rng() % 10;
        EXPECT_TRUE(classify(random_pattern(rng, PatternKind::regular, len, 2)).is_regular);
        EXPECT_TRUE(classify(random_pattern(rng, PatternKind::unary, len, 2)).is_unary);
        EXPECT_TRUE(classify(random_pattern(rng, PatternKind::noncross, len, 2, 3)).is_noncross);
        const PatternClass one = classify(random_pattern(rng, PatternKind::onerep, len, 2, 3));
        EXPECT_TRUE(one.is_one_rep_var);
        EXPECT_GE(one.x_block_count, 1u);
        if (len >= 4) {
            const PatternClass loc = classify(random_pattern(rng, PatternKind::klocal, len, 2, 3));
            EXPECT_FALSE(loc.is_noncross);
            EXPECT_FALSE(loc.is_one_rep_var);
            EXPECT_LE(loc.locality, 2u);
        }
    }
}

TEST(RandomPattern, LengthAndLetters) {
    std::mt19937_64 rng(92);
    const Pattern a = random_pattern(rng, PatternKind::regular, 9, 3);
    EXPECT_EQ(a.size(), 9u);
    for (const Symbol& s : a)
        if (s.is_terminal()) {
            EXPECT_GE(s.letter(), 1u);
            EXPECT_LE(s.letter(), 3u);
        }
    EXPECT_THROW(random_pattern(rng, PatternKind::regular, 0, 2), std::invalid_argument);
    EXPECT_THROW(parse_pattern_kind("cubic"), std::invalid_argument);
    EXPECT_EQ(parse_pattern_kind("2local"), PatternKind::klocal);
}

TEST(PlantedWord, ImagesReproduceWord) {
    std::mt19937_64 rng(93);
    for (int it = 0; it < 200; ++it) {
        const Pattern alpha = random_pattern(rng, PatternKind::onerep, 2 + rng() % 8, 3);
        Substitution h;
        const Word w = planted_word(rng, alpha, 20, 3, 0, &h);
        EXPECT_EQ(w, apply_substitution(alpha, h));
        EXPECT_LE(w.size(), std::max<std::size_t>(20, alpha.terminal_count()));
        const Word mutated = planted_word(rng, alpha, 20, 3, 2, &h);
        EXPECT_LE(hamming_distance(mutated, apply_substitution(alpha, h)), 2u);
    }
}

TEST(RandomInstance, SeedReproducible) {
    std::mt19937_64 a(7), b(7);
    const Instance x = random_instance(a, PatternKind::klocal, 30, 6, 2, 3, 1);
    const Instance y = random_instance(b, PatternKind::klocal, 30, 6, 2, 3, 1);
    EXPECT_EQ(instance_digest(x), instance_digest(y));
    EXPECT_EQ(x.alphabet.names, (std::vector<std::string>{"1", "2"}));
}
