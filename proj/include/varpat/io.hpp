#ifndef VARPAT_IO_HPP
#define VARPAT_IO_HPP

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "varpat/core.hpp"

namespace varpat {

/// Names for letter ids 1..sigma; used to print witnesses and to keep the
/// generators' letter order in the JSON header.
struct Alphabet {
    std::vector<std::string> names;

    Letter sigma() const noexcept { return static_cast<Letter>(names.size()); }

    std::string name(Letter a) const {
        if (a >= 1 && a <= names.size()) return names[a - 1];
        return "#" + std::to_string(a);
    }

    std::string spell(WordView w, const std::string& sep = "") const {
        std::string out;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i > 0) out += sep;
            out += name(w[i]);
        }
        return out;
    }

    /// True when every name is a single character, so words can be spelled
    /// without separators.
    bool single_chars() const {
        return std::all_of(names.begin(), names.end(), [](const std::string& s) { return s.size() == 1; });
    }
};

struct Instance {
    Word word;
    Pattern pattern;
    std::optional<std::uint64_t> delta;
    Alphabet alphabet;
};

// ---------------------------------------------------------------------------
// Text format: terminals are ASCII characters, variables are written {name}.
// ---------------------------------------------------------------------------

namespace detail {

inline void scan_text_pattern(const std::string& text, std::vector<std::pair<bool, std::string>>& out) {
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '{') {
            const std::size_t close = text.find('}', i);
            if (close == std::string::npos) throw ParseError("unterminated variable at offset " + std::to_string(i));
            const std::string name = text.substr(i + 1, close - i - 1);
            if (name.empty()) throw ParseError("empty variable name at offset " + std::to_string(i));
            if (name.find('{') != std::string::npos) throw ParseError("nested '{' at offset " + std::to_string(i));
            out.emplace_back(true, name);
            i = close;
        } else if (c == '}') {
            throw ParseError("unmatched '}' at offset " + std::to_string(i));
        } else if (static_cast<unsigned char>(c) < 0x21 || static_cast<unsigned char>(c) > 0x7e) {
            throw ParseError("non-printable byte in pattern at offset " + std::to_string(i));
        } else {
            out.emplace_back(false, std::string(1, c));
        }
    }
}

}  // namespace detail

/// Parses a text word and pattern together; letter ids follow the sorted
/// order of the bytes that occur in either.
inline Instance parse_text_instance(const std::string& word, const std::string& pattern) {
    std::vector<std::pair<bool, std::string>> symbols;
    detail::scan_text_pattern(pattern, symbols);
    if (symbols.empty()) throw ParseError("pattern is empty");
    for (std::size_t i = 0; i < word.size(); ++i) {
        const auto c = static_cast<unsigned char>(word[i]);
        if (c < 0x21 || c > 0x7e || c == '{' || c == '}')
            throw ParseError("invalid byte in word at offset " + std::to_string(i));
    }
    std::vector<char> bytes(word.begin(), word.end());
    for (const auto& [is_var, s] : symbols)
        if (!is_var) bytes.push_back(s[0]);
    std::sort(bytes.begin(), bytes.end());
    bytes.erase(std::unique(bytes.begin(), bytes.end()), bytes.end());

    Instance inst;
    std::map<char, Letter> id;
    for (char c : bytes) {
        inst.alphabet.names.emplace_back(1, c);
        id[c] = inst.alphabet.sigma();
    }
    for (char c : word) inst.word.push_back(id[c]);
    PatternBuilder b;
    for (const auto& [is_var, s] : symbols) {
        if (is_var)
            b.var(s);
        else
            b.terminal(id[s[0]]);
    }
    inst.pattern = b.build();
    return inst;
}

inline std::string format_text_pattern(const Pattern& alpha, const Alphabet& alphabet) {
    std::string out;
    for (const Symbol& s : alpha) {
        if (s.is_variable())
            out += "{" + alpha.name(s.var()) + "}";
        else
            out += alphabet.name(s.letter());
    }
    return out;
}

// ---------------------------------------------------------------------------
// JSON format: {"sigma":s,"word":[...],"pattern":[{"t":3}|{"v":"x"}],
//               "delta":d?,"alphabet":[names]?}
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const Instance& inst) {
    nlohmann::json j;
    Letter sigma = inst.alphabet.sigma();
    for (Letter a : inst.word) sigma = std::max(sigma, a);
    for (const Symbol& s : inst.pattern)
        if (s.is_terminal()) sigma = std::max(sigma, s.letter());
    j["sigma"] = sigma;
    j["word"] = inst.word;
    nlohmann::json pat = nlohmann::json::array();
    for (const Symbol& s : inst.pattern) {
        if (s.is_variable())
            pat.push_back({{"v", inst.pattern.name(s.var())}});
        else
            pat.push_back({{"t", s.letter()}});
    }
    j["pattern"] = std::move(pat);
    if (inst.delta) j["delta"] = *inst.delta;
    if (!inst.alphabet.names.empty()) j["alphabet"] = inst.alphabet.names;
    return j;
}

inline Instance instance_from_json(const nlohmann::json& j) {
    try {
        Instance inst;
        if (!j.is_object()) throw ParseError("instance must be a JSON object");
        const auto sigma = j.at("sigma").get<std::uint64_t>();
        if (sigma == 0 || sigma > 0xfffffffeULL) throw ParseError("sigma out of range");
        auto check = [&](std::uint64_t a, const char* where) {
            if (a < 1 || a > sigma)
                throw ParseError(std::string("letter ") + std::to_string(a) + " in " + where + " outside [1:" +
                                 std::to_string(sigma) + "]");
            return static_cast<Letter>(a);
        };
        for (const auto& a : j.at("word")) inst.word.push_back(check(a.get<std::uint64_t>(), "word"));
        PatternBuilder b;
        for (const auto& s : j.at("pattern")) {
            if (s.contains("t") == s.contains("v")) throw ParseError("pattern entry needs exactly one of t, v");
            if (s.contains("t"))
                b.terminal(check(s.at("t").get<std::uint64_t>(), "pattern"));
            else
                b.var(s.at("v").get<std::string>());
        }
        inst.pattern = b.build();
        if (inst.pattern.empty()) throw ParseError("pattern is empty");
        if (j.contains("delta")) inst.delta = j.at("delta").get<std::uint64_t>();
        if (j.contains("alphabet")) {
            inst.alphabet.names = j.at("alphabet").get<std::vector<std::string>>();
            if (inst.alphabet.names.size() != sigma) throw ParseError("alphabet size differs from sigma");
        } else {
            for (std::uint64_t a = 1; a <= sigma; ++a) inst.alphabet.names.push_back(std::to_string(a));
        }
        return inst;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed instance JSON: ") + e.what());
    }
}

/// Reads a JSON instance, or two non-empty text lines (word, then pattern)
/// with an optional third line holding delta.
inline Instance read_instance(std::istream& in) {
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError("empty instance");
    if (text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(std::string("malformed instance JSON: ") + e.what());
        }
        return instance_from_json(j);
    }
    std::vector<std::string> lines;
    std::istringstream ls(text);
    for (std::string line; std::getline(ls, line);) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    if (lines.size() < 2 || lines.size() > 3) throw ParseError("text instance needs word and pattern lines");
    Instance inst = parse_text_instance(lines[0], lines[1]);
    if (lines.size() == 3) {
        if (lines[2].find_first_not_of("0123456789") != std::string::npos) throw ParseError("bad delta line: " + lines[2]);
        try {
            std::size_t used = 0;
            inst.delta = std::stoull(lines[2], &used);
            if (used != lines[2].size()) throw ParseError("bad delta line");
        } catch (const std::logic_error&) {
            throw ParseError("bad delta line: " + lines[2]);
        }
    }
    return inst;
}

/// 64-bit FNV-1a over the canonical JSON text.
inline std::uint64_t instance_digest(const Instance& inst) {
    const std::string text = to_json(inst).dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string format_substitution(const Pattern& alpha, const Substitution& h, const Alphabet& alphabet) {
    std::string out;
    const std::string sep = alphabet.single_chars() ? "" : " ";
    for (VarId x : alpha.variables()) {
        auto it = h.find(x);
        if (it == h.end()) continue;
        if (!out.empty()) out += ", ";
        out += alpha.name(x) + "=" + (it->second.empty() ? std::string("ε") : alphabet.spell(it->second, sep));
    }
    return out;
}

}  // namespace varpat

#endif
