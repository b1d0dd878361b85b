#ifndef VARPAT_CORE_HPP
#define VARPAT_CORE_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace varpat {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define VARPAT_DEFINE_ERROR(Name)                 \
    class Name : public Error {                   \
    public:                                       \
        using Error::Error;                       \
    }

VARPAT_DEFINE_ERROR(MissingVariable);
VARPAT_DEFINE_ERROR(LengthMismatch);
VARPAT_DEFINE_ERROR(SpanLengthMismatch);
VARPAT_DEFINE_ERROR(PatternLongerThanWord);
VARPAT_DEFINE_ERROR(LengthInfeasible);
VARPAT_DEFINE_ERROR(NotNonCross);
VARPAT_DEFINE_ERROR(NotOneRepVar);
VARPAT_DEFINE_ERROR(InvalidWitness);
VARPAT_DEFINE_ERROR(ParseError);
VARPAT_DEFINE_ERROR(UnsupportedClass);

#undef VARPAT_DEFINE_ERROR

class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string& what, std::uint64_t required, std::uint64_t budget)
        : Error(what + " (required " + std::to_string(required) + ", budget " +
                std::to_string(budget) + ")"),
          required_(required), budget_(budget) {}

    std::uint64_t required() const noexcept { return required_; }
    std::uint64_t budget() const noexcept { return budget_; }

private:
    std::uint64_t required_;
    std::uint64_t budget_;
};

// ---------------------------------------------------------------------------
// Letters, words, variables
// ---------------------------------------------------------------------------

/// Terminal letter id in [1:sigma]. Id 0 is reserved as a separator.
using Letter = std::uint32_t;
using Word = std::vector<Letter>;
using WordView = std::span<const Letter>;

struct VarId {
    std::uint32_t value = 0;

    friend constexpr auto operator<=>(const VarId&, const VarId&) = default;
};

/// 1-based inclusive interval [first:last]; empty when last + 1 == first.
struct Interval {
    std::size_t first = 1;
    std::size_t last = 0;

    constexpr std::size_t length() const noexcept { return last + 1 - first; }
    constexpr bool empty() const noexcept { return last + 1 == first; }

    friend constexpr bool operator==(const Interval&, const Interval&) = default;
};

/// w[i:j] with 1-based inclusive bounds; empty when i > j.
inline WordView factor(WordView w, std::size_t i, std::size_t j) {
    if (i > j) return {};
    if (i == 0 || j > w.size()) throw std::out_of_range("factor bounds outside word");
    return w.subspan(i - 1, j - i + 1);
}

inline Word reversed(WordView w) { return Word(w.rbegin(), w.rend()); }

class Symbol {
public:
    constexpr Symbol() = default;

    static constexpr Symbol terminal(Letter a) { return Symbol(false, a); }
    static constexpr Symbol variable(VarId x) { return Symbol(true, x.value); }

    constexpr bool is_variable() const noexcept { return variable_; }
    constexpr bool is_terminal() const noexcept { return !variable_; }
    constexpr Letter letter() const noexcept { return value_; }
    constexpr VarId var() const noexcept { return VarId{value_}; }

    friend constexpr bool operator==(const Symbol&, const Symbol&) = default;

private:
    constexpr Symbol(bool variable, std::uint32_t value) : variable_(variable), value_(value) {}

    bool variable_ = false;
    std::uint32_t value_ = 0;
};

/// Sequence of terminals and variables. Variable names are kept for I/O only;
/// identity is the numeric VarId.
class Pattern {
public:
    Pattern() = default;
    explicit Pattern(std::vector<Symbol> symbols, std::vector<std::string> names = {})
        : symbols_(std::move(symbols)), names_(std::move(names)) {}

    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }
    const Symbol& operator[](std::size_t i) const { return symbols_[i]; }
    const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
    auto begin() const noexcept { return symbols_.begin(); }
    auto end() const noexcept { return symbols_.end(); }

    std::size_t terminal_count() const {
        return static_cast<std::size_t>(std::count_if(
            symbols_.begin(), symbols_.end(), [](const Symbol& s) { return s.is_terminal(); }));
    }

    /// Distinct variables in order of first occurrence.
    std::vector<VarId> variables() const {
        std::vector<VarId> out;
        for (const Symbol& s : symbols_) {
            if (s.is_variable() && std::find(out.begin(), out.end(), s.var()) == out.end())
                out.push_back(s.var());
        }
        return out;
    }

    std::size_t occurrences(VarId x) const {
        return static_cast<std::size_t>(std::count(symbols_.begin(), symbols_.end(), Symbol::variable(x)));
    }

    std::map<VarId, std::size_t> occurrence_counts() const {
        std::map<VarId, std::size_t> out;
        for (const Symbol& s : symbols_)
            if (s.is_variable()) ++out[s.var()];
        return out;
    }

    const std::vector<std::string>& names() const noexcept { return names_; }

    std::string name(VarId x) const {
        if (x.value < names_.size() && !names_[x.value].empty()) return names_[x.value];
        return "x" + std::to_string(x.value);
    }

    /// Sub-pattern [first, last) keeping the name table.
    Pattern slice(std::size_t first, std::size_t last) const {
        return Pattern(std::vector<Symbol>(symbols_.begin() + static_cast<std::ptrdiff_t>(first),
                                           symbols_.begin() + static_cast<std::ptrdiff_t>(last)),
                       names_);
    }

    friend bool operator==(const Pattern& a, const Pattern& b) { return a.symbols_ == b.symbols_; }

private:
    std::vector<Symbol> symbols_;
    std::vector<std::string> names_;
};

/// Incremental construction with named variables.
class PatternBuilder {
public:
    PatternBuilder& terminal(Letter a) {
        symbols_.push_back(Symbol::terminal(a));
        return *this;
    }

    PatternBuilder& terminals(WordView w) {
        for (Letter a : w) terminal(a);
        return *this;
    }

    PatternBuilder& repeat(WordView w, std::size_t times) {
        for (std::size_t i = 0; i < times; ++i) terminals(w);
        return *this;
    }

    PatternBuilder& var(const std::string& name) {
        symbols_.push_back(Symbol::variable(id(name)));
        return *this;
    }

    VarId id(const std::string& name) {
        auto it = ids_.find(name);
        if (it != ids_.end()) return it->second;
        VarId x{static_cast<std::uint32_t>(names_.size())};
        names_.push_back(name);
        ids_.emplace(name, x);
        return x;
    }

    Pattern build() const { return Pattern(symbols_, names_); }

private:
    std::vector<Symbol> symbols_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, VarId> ids_;
};

using Substitution = std::map<VarId, Word>;

// ---------------------------------------------------------------------------
// Distance
// ---------------------------------------------------------------------------

/// Finite mismatch count or Infinite (no length-feasible substitution).
class Distance {
public:
    constexpr Distance() : value_(kInfinite) {}
    constexpr Distance(std::uint64_t v) : value_(v) {}  // NOLINT(google-explicit-constructor)

    static constexpr Distance infinite() { return Distance(); }

    constexpr bool is_finite() const noexcept { return value_ != kInfinite; }
    constexpr bool is_infinite() const noexcept { return value_ == kInfinite; }

    std::uint64_t value() const {
        if (!is_finite()) throw std::logic_error("value() of an infinite distance");
        return value_;
    }

    /// Value with Infinite mapped to the supplied cap.
    constexpr std::uint64_t value_or(std::uint64_t cap) const noexcept {
        return is_finite() ? value_ : cap;
    }

    friend constexpr Distance operator+(Distance a, Distance b) {
        if (!a.is_finite() || !b.is_finite()) return infinite();
        return Distance(a.value_ + b.value_);
    }

    friend constexpr auto operator<=>(const Distance&, const Distance&) = default;

    friend std::ostream& operator<<(std::ostream& os, const Distance& d) {
        if (d.is_finite()) return os << d.value_;
        return os << "inf";
    }

    std::string to_string() const { return is_finite() ? std::to_string(value_) : "inf"; }

private:
    static constexpr std::uint64_t kInfinite = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t value_;
};

// ---------------------------------------------------------------------------
// Basic operations
// ---------------------------------------------------------------------------

inline std::size_t hamming_distance(WordView u, WordView v) {
    if (u.size() != v.size())
        throw LengthMismatch("hamming_distance on words of lengths " + std::to_string(u.size()) +
                             " and " + std::to_string(v.size()));
    std::size_t d = 0;
    for (std::size_t i = 0; i < u.size(); ++i) d += (u[i] != v[i]);
    return d;
}

inline Word apply_substitution(const Pattern& alpha, const Substitution& h) {
    Word out;
    for (const Symbol& s : alpha) {
        if (s.is_terminal()) {
            out.push_back(s.letter());
            continue;
        }
        auto it = h.find(s.var());
        if (it == h.end()) throw MissingVariable("no image for variable " + alpha.name(s.var()));
        out.insert(out.end(), it->second.begin(), it->second.end());
    }
    return out;
}

/// d_HAM(h(alpha), w), Infinite when the lengths differ.
inline Distance substitution_distance(const Pattern& alpha, const Substitution& h, WordView w) {
    Word image = apply_substitution(alpha, h);
    if (image.size() != w.size()) return Distance::infinite();
    return hamming_distance(image, w);
}

struct PeeledInstance {
    Pattern core_pattern;
    Word core_word;
    std::uint64_t affix_mismatches = 0;
    bool feasible = true;
    std::size_t prefix_length = 0;  // terminals peeled from the front
    std::size_t suffix_length = 0;  // terminals peeled from the back
};

/// Strips the maximal terminal prefix and suffix of alpha, charging their
/// mismatches against the aligned prefix and suffix of w.
inline PeeledInstance peel_affixes(const Pattern& alpha, WordView w) {
    PeeledInstance out;
    const std::size_t m = alpha.size();
    std::size_t pre = 0;
    while (pre < m && alpha[pre].is_terminal()) ++pre;

    if (pre == m) {
        // All-terminal pattern: the core is empty.
        out.core_pattern = alpha.slice(0, 0);
        out.prefix_length = m;
        if (m != w.size()) {
            out.feasible = false;
            return out;
        }
        for (std::size_t i = 0; i < m; ++i) out.affix_mismatches += (alpha[i].letter() != w[i]);
        return out;
    }

    std::size_t suf = 0;
    while (alpha[m - 1 - suf].is_terminal()) ++suf;
    out.prefix_length = pre;
    out.suffix_length = suf;
    if (pre + suf > w.size()) {
        out.feasible = false;
        return out;
    }
    for (std::size_t i = 0; i < pre; ++i) out.affix_mismatches += (alpha[i].letter() != w[i]);
    for (std::size_t i = 0; i < suf; ++i)
        out.affix_mismatches += (alpha[m - 1 - i].letter() != w[w.size() - 1 - i]);
    out.core_pattern = alpha.slice(pre, m - suf);
    out.core_word.assign(w.begin() + static_cast<std::ptrdiff_t>(pre),
                         w.end() - static_cast<std::ptrdiff_t>(suf));
    return out;
}

/// Result shape shared by the exact matchers.
struct MatchResult {
    Distance distance;
    Substitution witness;  // empty when distance is Infinite
};

}  // namespace varpat

#endif
