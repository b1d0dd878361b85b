#ifndef VARPAT_UNARY_HPP
#define VARPAT_UNARY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "varpat/core.hpp"

namespace varpat {

struct MedianResult {
    Word median;
    std::uint64_t total_distance = 0;
};

struct UnaryResult {
    Distance distance;  // Infinite when no image length fits
    Word image;
};

namespace detail {

/// Column-majority counter with sparse reset. Ties go to the smallest letter.
class ColumnCounter {
public:
    void add(Letter a) {
        if (a >= count_.size()) count_.resize(static_cast<std::size_t>(a) + 1, 0);
        if (count_[a]++ == 0) touched_.push_back(a);
    }

    /// Most frequent letter of the column and its frequency; clears the
    /// column. An empty column yields letter 1 with frequency 0.
    std::pair<Letter, std::size_t> take() {
        Letter best = 1;
        std::size_t freq = 0;
        for (Letter a : touched_) {
            const std::size_t c = count_[a];
            if (c > freq || (c == freq && a < best)) {
                best = a;
                freq = c;
            }
            count_[a] = 0;
        }
        touched_.clear();
        return {best, freq};
    }

private:
    std::vector<std::size_t> count_;
    std::vector<Letter> touched_;
};

/// Median over equal-length windows w[s : s+len-1] (0-based starts).
inline std::uint64_t median_of_windows(WordView w, const std::vector<std::size_t>& starts, std::size_t len,
                                       ColumnCounter& counter, Word* image = nullptr) {
    std::uint64_t total = 0;
    if (image) image->assign(len, 1);
    for (std::size_t c = 0; c < len; ++c) {
        for (std::size_t s : starts) counter.add(w[s + c]);
        const auto [letter, freq] = counter.take();
        total += starts.size() - freq;
        if (image) (*image)[c] = letter;
    }
    return total;
}

inline VarId sole_variable(const Pattern& alpha, const char* who) {
    std::optional<VarId> x;
    for (const Symbol& s : alpha) {
        if (!s.is_variable()) continue;
        if (x && *x != s.var()) throw UnsupportedClass(std::string(who) + ": more than one variable");
        x = s.var();
    }
    if (!x) throw UnsupportedClass(std::string(who) + ": pattern has no variable");
    return *x;
}

}  // namespace detail

/// A string minimizing the summed Hamming distance to `words`.
inline MedianResult median_string(const std::vector<Word>& words) {
    if (words.empty()) throw std::invalid_argument("median_string of an empty list");
    const std::size_t m = words.front().size();
    for (const Word& u : words)
        if (u.size() != m) throw LengthMismatch("median_string: words of different lengths");
    detail::ColumnCounter counter;
    MedianResult out;
    out.median.assign(m, 1);
    for (std::size_t c = 0; c < m; ++c) {
        for (const Word& u : words) counter.add(u[c]);
        const auto [letter, freq] = counter.take();
        out.median[c] = letter;
        out.total_distance += words.size() - freq;
    }
    return out;
}

/// Best single image of length `len` for the variable shared by `blocks`,
/// each block aligned to its target; terminal mismatches are included.
inline UnaryResult optimal_unary_assignment(const std::vector<Pattern>& blocks, const std::vector<Word>& targets,
                                            std::size_t len) {
    if (blocks.size() != targets.size())
        throw std::invalid_argument("optimal_unary_assignment: blocks and targets differ in count");
    std::optional<VarId> x;
    for (const Pattern& b : blocks)
        for (const Symbol& s : b)
            if (s.is_variable()) {
                if (x && *x != s.var()) throw UnsupportedClass("optimal_unary_assignment: blocks are not unary");
                x = s.var();
            }

    // Concatenate the targets so every window is a factor of one word.
    Word joined;
    std::vector<std::size_t> starts;
    std::uint64_t fixed = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const std::size_t expanded = blocks[b].terminal_count() + (blocks[b].size() - blocks[b].terminal_count()) * len;
        if (targets[b].size() != expanded)
            throw LengthInfeasible("optimal_unary_assignment: target " + std::to_string(b) + " has length " +
                                   std::to_string(targets[b].size()) + ", block expands to " +
                                   std::to_string(expanded));
        std::size_t pos = joined.size();
        for (const Symbol& s : blocks[b]) {
            if (s.is_variable()) {
                starts.push_back(pos);
                pos += len;
            } else {
                fixed += (s.letter() != targets[b][pos - joined.size()]);
                ++pos;
            }
        }
        joined.insert(joined.end(), targets[b].begin(), targets[b].end());
    }
    UnaryResult out;
    detail::ColumnCounter counter;
    const std::uint64_t var_cost = starts.empty() ? 0 : detail::median_of_windows(joined, starts, len, counter, &out.image);
    if (starts.empty()) out.image.assign(len, 1);
    out.distance = fixed + var_cost;
    return out;
}

/// d_HAM(alpha, w) for a pattern with one variable x occurring m_x times:
/// x must take length (n - |alpha|_t) / m_x.
inline UnaryResult min_mismatch_1var(WordView w, const Pattern& alpha) {
    detail::sole_variable(alpha, "min_mismatch_1var");
    const std::size_t n = w.size();
    const std::size_t terminals = alpha.terminal_count();
    const std::size_t occ = alpha.size() - terminals;
    UnaryResult out;
    if (terminals > n || (n - terminals) % occ != 0) return out;
    const std::size_t len = (n - terminals) / occ;

    std::vector<std::size_t> starts;
    std::uint64_t fixed = 0;
    std::size_t pos = 0;
    for (const Symbol& s : alpha) {
        if (s.is_variable()) {
            starts.push_back(pos);
            pos += len;
        } else {
            fixed += (s.letter() != w[pos]);
            ++pos;
        }
    }
    detail::ColumnCounter counter;
    out.distance = fixed + detail::median_of_windows(w, starts, len, counter, &out.image);
    return out;
}

}  // namespace varpat

#endif
