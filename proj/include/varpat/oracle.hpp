#ifndef VARPAT_ORACLE_HPP
#define VARPAT_ORACLE_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "varpat/core.hpp"
#include "varpat/unary.hpp"

namespace varpat {

enum class OracleMode {
    pure,            // every image over the alphabet
    median_shortcut  // repeated variables take the column median, others copy their window
};

struct OracleOptions {
    std::uint64_t budget = 10'000'000;
    OracleMode mode = OracleMode::median_shortcut;
    /// Letters images may use; empty means the letters of w and alpha.
    std::vector<Letter> alphabet;
};

struct OracleResult {
    Distance distance;
    Substitution witness;
    std::uint64_t enumerated = 0;
};

namespace detail {

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
    return b > std::numeric_limits<std::uint64_t>::max() - a ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

/// Calls f(lengths) for every assignment of image lengths (indexed like
/// `vars`) with sum occ * len = free.
template <typename F>
void for_each_length_profile(const std::vector<std::size_t>& occ, std::size_t free, F&& f) {
    std::vector<std::size_t> len(occ.size(), 0);
    auto rec = [&](auto&& self, std::size_t v, std::size_t left) -> void {
        if (v + 1 == occ.size()) {
            if (left % occ[v] != 0) return;
            len[v] = left / occ[v];
            f(len);
            return;
        }
        for (std::size_t l = 0; occ[v] * l <= left; ++l) {
            len[v] = l;
            self(self, v + 1, left - occ[v] * l);
        }
    };
    if (!occ.empty()) rec(rec, 0, free);
}

}  // namespace detail

/// Exhaustive d_HAM(alpha, w). Throws BudgetExceeded when the enumeration
/// would exceed opts.budget.
inline OracleResult brute_force_min_mismatch(WordView w, const Pattern& alpha, const OracleOptions& opts = {}) {
    OracleResult out;
    const std::size_t n = w.size();
    const std::size_t terminals = alpha.terminal_count();
    const std::vector<VarId> vars = alpha.variables();
    if (vars.empty()) {
        out.enumerated = 1;
        if (terminals == n) out.distance = substitution_distance(alpha, {}, w);
        return out;
    }
    if (terminals > n) return out;

    std::vector<Letter> letters = opts.alphabet;
    if (letters.empty()) {
        letters.assign(w.begin(), w.end());
        for (const Symbol& s : alpha)
            if (s.is_terminal()) letters.push_back(s.letter());
        std::sort(letters.begin(), letters.end());
        letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
        if (letters.empty()) letters.push_back(1);
    }
    std::map<VarId, std::size_t> index;
    for (std::size_t v = 0; v < vars.size(); ++v) index[vars[v]] = v;
    std::vector<std::size_t> occ(vars.size(), 0);
    for (const Symbol& s : alpha)
        if (s.is_variable()) ++occ[index[s.var()]];

    // Size the enumeration before doing any of it.
    std::uint64_t required = 0;
    detail::for_each_length_profile(occ, n - terminals, [&](const std::vector<std::size_t>& len) {
        std::uint64_t count = 1;
        if (opts.mode == OracleMode::pure)
            for (std::size_t l : len)
                for (std::size_t i = 0; i < l; ++i) count = detail::saturating_mul(count, letters.size());
        required = detail::saturating_add(required, count);
        // Stop sizing early; the reported requirement is then a lower bound.
        if (required > opts.budget) throw BudgetExceeded("oracle enumeration", required, opts.budget);
    });
    out.enumerated = required;

    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    detail::ColumnCounter counter;
    detail::for_each_length_profile(occ, n - terminals, [&](const std::vector<std::size_t>& len) {
        // Window starts (0-based) of every occurrence, plus fixed terminal cost.
        std::vector<std::vector<std::size_t>> starts(vars.size());
        std::uint64_t fixed = 0;
        std::size_t pos = 0;
        for (const Symbol& s : alpha) {
            if (s.is_terminal()) {
                fixed += (s.letter() != w[pos]);
                ++pos;
            } else {
                const std::size_t v = index[s.var()];
                starts[v].push_back(pos);
                pos += len[v];
            }
        }
        if (fixed >= best) return;

        if (opts.mode == OracleMode::median_shortcut) {
            std::uint64_t total = fixed;
            Substitution h;
            for (std::size_t v = 0; v < vars.size(); ++v) {
                Word image;
                total += detail::median_of_windows(w, starts[v], len[v], counter, &image);
                h[vars[v]] = std::move(image);
            }
            if (total < best) {
                best = total;
                out.witness = std::move(h);
            }
            return;
        }

        std::vector<Word> image(vars.size());
        std::vector<std::uint64_t> cost(vars.size() + 1, 0);
        cost[0] = fixed;
        auto cost_of = [&](std::size_t v) {
            std::uint64_t c = 0;
            for (std::size_t s : starts[v])
                for (std::size_t i = 0; i < len[v]; ++i) c += (image[v][i] != w[s + i]);
            return c;
        };
        auto rec = [&](auto&& self, std::size_t v) -> void {
            if (v == vars.size()) {
                if (cost[v] < best) {
                    best = cost[v];
                    out.witness.clear();
                    for (std::size_t q = 0; q < vars.size(); ++q) out.witness[vars[q]] = image[q];
                }
                return;
            }
            std::vector<std::size_t> digit(len[v], 0);
            image[v].assign(len[v], letters.front());
            while (true) {
                for (std::size_t i = 0; i < len[v]; ++i) image[v][i] = letters[digit[i]];
                cost[v + 1] = cost[v] + cost_of(v);
                self(self, v + 1);
                std::size_t i = 0;
                while (i < len[v] && ++digit[i] == letters.size()) digit[i++] = 0;
                if (i == len[v]) break;
            }
        };
        rec(rec, 0);
    });
    if (best != std::numeric_limits<std::uint64_t>::max()) out.distance = best;
    return out;
}

}  // namespace varpat

#endif
