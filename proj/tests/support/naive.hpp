// Small independent reference implementations used only by the tests.
#ifndef VARPAT_TESTS_NAIVE_HPP
#define VARPAT_TESTS_NAIVE_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "varpat/core.hpp"

namespace naive {

using varpat::Letter;
using varpat::Pattern;
using varpat::Substitution;
using varpat::VarId;
using varpat::Word;

inline constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();

inline Word word(const std::string& s) {
    Word w;
    for (char c : s) w.push_back(static_cast<Letter>(static_cast<unsigned char>(c)));
    return w;
}

/// Every substitution over `letters`, each image no longer than |w|, scored
/// by direct application. Returns kInf when no length-feasible one exists.
inline std::uint64_t min_distance(const Pattern& alpha, const Word& w, const std::vector<Letter>& letters,
                                  Substitution* best_h = nullptr) {
    const std::vector<VarId> vars = alpha.variables();
    const auto counts = alpha.occurrence_counts();
    const std::size_t n = w.size();
    const std::size_t fixed = alpha.terminal_count();
    if (fixed > n) return kInf;
    std::uint64_t best = kInf;
    Substitution h;
    std::vector<std::size_t> len(vars.size(), 0);

    std::function<void(std::size_t, std::size_t)> images = [&](std::size_t v, std::size_t) {
        if (v == vars.size()) {
            const Word image = varpat::apply_substitution(alpha, h);
            const std::uint64_t d = varpat::hamming_distance(image, w);
            if (d < best) {
                best = d;
                if (best_h) *best_h = h;
            }
            return;
        }
        Word img(len[v], letters.front());
        std::vector<std::size_t> digit(len[v], 0);
        while (true) {
            for (std::size_t k = 0; k < len[v]; ++k) img[k] = letters[digit[k]];
            h[vars[v]] = img;
            images(v + 1, 0);
            std::size_t k = 0;
            while (k < len[v] && ++digit[k] == letters.size()) digit[k++] = 0;
            if (k == len[v]) break;
        }
    };
    std::function<void(std::size_t, std::size_t)> lengths = [&](std::size_t v, std::size_t used) {
        if (v == vars.size()) {
            if (used == n - fixed) images(0, 0);
            return;
        }
        const std::size_t c = counts.at(vars[v]);
        for (std::size_t l = 0; used + c * l <= n - fixed; ++l) {
            len[v] = l;
            lengths(v + 1, used + c * l);
        }
    };
    if (vars.empty()) return n == fixed ? varpat::hamming_distance(varpat::apply_substitution(alpha, {}), w) : kInf;
    lengths(0, 0);
    return best;
}

inline std::vector<Letter> alphabet_of(const Pattern& alpha, const Word& w) {
    std::vector<Letter> out(w.begin(), w.end());
    for (const auto& s : alpha)
        if (s.is_terminal()) out.push_back(s.letter());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.empty()) out.push_back(1);
    return out;
}

inline std::uint64_t min_distance(const Pattern& alpha, const Word& w) {
    return min_distance(alpha, w, alphabet_of(alpha, w));
}

inline Word random_word(std::mt19937_64& rng, std::size_t n, Letter sigma) {
    std::uniform_int_distribution<Letter> letter(1, sigma);
    Word w(n);
    for (auto& a : w) a = letter(rng);
    return w;
}

}  // namespace naive

#endif
