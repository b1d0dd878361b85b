#include <gtest/gtest.h>

#include <sstream>

#include "varpat/io.hpp"

using namespace varpat;

namespace {

Instance read(const std::string& text) {
    std::istringstream in(text);
    return read_instance(in);
}

}  // namespace

TEST(TextFormat, ParsesWordPatternDelta) {
    const Instance inst = read("abcab\n{x}c{x}\n2\n");
    EXPECT_EQ(inst.alphabet.names, (std::vector<std::string>{"a", "b", "c"}));
    EXPECT_EQ(inst.word, (Word{1, 2, 3, 1, 2}));
    ASSERT_EQ(inst.pattern.size(), 3u);
    EXPECT_TRUE(inst.pattern[0].is_variable());
    EXPECT_EQ(inst.pattern[1].letter(), 3u);
    EXPECT_EQ(inst.pattern[0].var(), inst.pattern[2].var());
    EXPECT_EQ(inst.delta, 2u);
    EXPECT_EQ(format_text_pattern(inst.pattern, inst.alphabet), "{x}c{x}");
}

TEST(TextFormat, PatternLettersJoinAlphabet) {
    const Instance inst = parse_text_instance("aa", "{x}z");
    EXPECT_EQ(inst.alphabet.names, (std::vector<std::string>{"a", "z"}));
    EXPECT_FALSE(inst.delta.has_value());
}

TEST(TextFormat, Errors) {
    EXPECT_THROW(read(""), ParseError);
    EXPECT_THROW(read("ab\n"), ParseError);
    EXPECT_THROW(read("ab\n{x}\nz\n"), ParseError);
    EXPECT_THROW(read("ab\n{x}\n-1\n"), ParseError);
    EXPECT_THROW(read("ab\n{x}\n1\nextra\n"), ParseError);
    EXPECT_THROW(parse_text_instance("ab", "{x"), ParseError);
    EXPECT_THROW(parse_text_instance("ab", "{}"), ParseError);
    EXPECT_THROW(parse_text_instance("a b", "{x}"), ParseError);
    EXPECT_THROW(parse_text_instance("ab", ""), ParseError);
}

TEST(JsonFormat, RoundTrip) {
    const Instance inst = read(R"({"sigma":3,"word":[1,2,3],"pattern":[{"v":"x"},{"t":2},{"v":"y"}],"delta":1})");
    EXPECT_EQ(inst.word, (Word{1, 2, 3}));
    EXPECT_EQ(inst.delta, 1u);
    EXPECT_EQ(inst.alphabet.names, (std::vector<std::string>{"1", "2", "3"}));
    const Instance back = instance_from_json(to_json(inst));
    EXPECT_EQ(back.word, inst.word);
    EXPECT_EQ(back.pattern, inst.pattern);
    EXPECT_EQ(back.delta, inst.delta);
    EXPECT_EQ(instance_digest(back), instance_digest(inst));

    const Instance text = parse_text_instance("abba", "{x}b{y}");
    const Instance via_json = instance_from_json(to_json(text));
    EXPECT_EQ(via_json.alphabet.names, text.alphabet.names);
    EXPECT_EQ(via_json.word, text.word);
}

TEST(JsonFormat, Errors) {
    EXPECT_THROW(read("{"), ParseError);
    EXPECT_THROW(read(R"({"word":[1],"pattern":[{"t":1}]})"), ParseError);
    EXPECT_THROW(read(R"({"sigma":2,"word":[3],"pattern":[{"t":1}]})"), ParseError);
    EXPECT_THROW(read(R"({"sigma":2,"word":[0],"pattern":[{"t":1}]})"), ParseError);
    EXPECT_THROW(read(R"({"sigma":2,"word":[1],"pattern":[]})"), ParseError);
    EXPECT_THROW(read(R"({"sigma":2,"word":[1],"pattern":[{"t":1,"v":"x"}]})"), ParseError);
    EXPECT_THROW(read(R"({"sigma":2,"word":[1],"pattern":[{"v":"x"}],"alphabet":["a"]})"), ParseError);
    EXPECT_THROW(read(R"({"sigma":2,"word":"ab","pattern":[{"v":"x"}]})"), ParseError);
    EXPECT_THROW(read("[1,2]"), ParseError);
}

TEST(Digest, StableAndSensitive) {
    const Instance a = parse_text_instance("abab", "{x}{x}");
    const Instance b = parse_text_instance("abab", "{x}{x}");
    EXPECT_EQ(instance_digest(a), instance_digest(b));
    Instance c = a;
    c.delta = 1;
    EXPECT_NE(instance_digest(a), instance_digest(c));
    EXPECT_NE(instance_digest(a), instance_digest(parse_text_instance("abba", "{x}{x}")));
}

TEST(FormatSubstitution, ShowsEmptyImages) {
    const Instance inst = parse_text_instance("ab", "{x}{y}");
    const VarId x = inst.pattern[0].var(), y = inst.pattern[1].var();
    const Substitution h{{x, Word{1, 2}}, {y, Word{}}};
    EXPECT_EQ(format_substitution(inst.pattern, h, inst.alphabet), "x=ab, y=ε");
    Alphabet wide;
    wide.names = {"10", "11"};
    EXPECT_EQ(format_substitution(inst.pattern, h, wide), "x=10 11, y=ε");
}
