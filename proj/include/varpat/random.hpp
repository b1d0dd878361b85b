#ifndef VARPAT_RANDOM_HPP
#define VARPAT_RANDOM_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "varpat/classify.hpp"
#include "varpat/core.hpp"
#include "varpat/io.hpp"

namespace varpat {

enum class PatternKind { regular, unary, noncross, onerep, klocal };

inline PatternKind parse_pattern_kind(const std::string& s) {
    if (s == "regular" || s == "reg") return PatternKind::regular;
    if (s == "unary" || s == "1var") return PatternKind::unary;
    if (s == "noncross") return PatternKind::noncross;
    if (s == "onerep" || s == "1rep" || s == "1repvar") return PatternKind::onerep;
    if (s == "klocal" || s == "2local") return PatternKind::klocal;
    throw std::invalid_argument("unknown pattern class: " + s);
}

namespace detail {

inline std::string var_name(std::size_t i) { return "x" + std::to_string(i + 1); }

/// Slot -1 is a terminal, v >= 0 names variable x_{v+1}.
inline Pattern pattern_of_slots(std::mt19937_64& rng, const std::vector<int>& slots, Letter sigma) {
    std::uniform_int_distribution<Letter> letter(1, sigma);
    PatternBuilder b;
    for (int s : slots) {
        if (s < 0)
            b.terminal(letter(rng));
        else
            b.var(var_name(static_cast<std::size_t>(s)));
    }
    return b.build();
}

}  // namespace detail

/// Random pattern of `length` symbols from the given class over at most
/// `vars` variables. k-local draws are crossing, not 1RepVar, and of locality
/// at most 2 (lengths below 4 leave them non-crossing).
inline Pattern random_pattern(std::mt19937_64& rng, PatternKind kind, std::size_t length, Letter sigma,
                              std::size_t vars = 3) {
    if (length == 0) throw std::invalid_argument("pattern length must be positive");
    if (vars == 0) vars = 1;
    std::bernoulli_distribution coin(0.5);
    std::vector<int> slots(length, -1);
    switch (kind) {
    case PatternKind::regular: {
        int next = 0;
        for (auto& s : slots)
            if (coin(rng)) s = next++;
        break;
    }
    case PatternKind::unary:
        for (auto& s : slots)
            if (coin(rng)) s = 0;
        slots[rng() % length] = 0;
        break;
    case PatternKind::noncross: {
        const std::size_t p = std::min(vars, length);
        for (std::size_t i = 0; i < length; ++i) {
            const int owner = static_cast<int>(i * p / length);
            if (coin(rng)) slots[i] = owner;
        }
        for (std::size_t i = 0, v = 0; i < length && v < p; ++i)
            if (i * p / length == v) slots[i] = static_cast<int>(v++);
        break;
    }
    case PatternKind::onerep: {
        int next = 1;
        std::uniform_int_distribution<int> pick(0, 3);
        for (auto& s : slots) {
            const int k = pick(rng);
            if (k < 2) s = 0;
            if (k == 2 && next < static_cast<int>(vars)) s = next++;
        }
        if (length >= 2) {
            const std::size_t a = rng() % length;
            std::size_t b = rng() % (length - 1);
            if (b >= a) ++b;
            slots[a] = slots[b] = 0;
        } else {
            slots[0] = 0;
        }
        break;
    }
    case PatternKind::klocal: {
        // Rejection: crossing patterns of locality at most 2 with two or more
        // repeated variables.
        std::uniform_int_distribution<int> pick(-1, static_cast<int>(std::max<std::size_t>(vars, 2)) - 1);
        for (int attempt = 0; attempt < 4096; ++attempt) {
            for (auto& s : slots) s = pick(rng);
            const Pattern alpha = detail::pattern_of_slots(rng, slots, sigma);
            const PatternClass c = classify(alpha);
            if (!c.is_noncross && !c.is_one_rep_var && c.locality <= 2) return alpha;
        }
        // Fallback shape x1 x2 x1 x2 padded with terminals.
        std::fill(slots.begin(), slots.end(), -1);
        for (std::size_t i = 0; i < std::min<std::size_t>(4, length); ++i) slots[i] = static_cast<int>(i % 2);
        break;
    }
    }
    return detail::pattern_of_slots(rng, slots, sigma);
}

/// Word h(alpha) for random images whose total length is as close to
/// `target` as occurrence counts allow, then `mutations` random positions
/// rewritten to a different letter (when sigma > 1).
inline Word planted_word(std::mt19937_64& rng, const Pattern& alpha, std::size_t target, Letter sigma,
                         std::size_t mutations, Substitution* images = nullptr) {
    std::uniform_int_distribution<Letter> letter(1, sigma);
    const auto counts = alpha.occurrence_counts();
    std::vector<std::pair<VarId, std::size_t>> vars(counts.begin(), counts.end());
    Substitution h;
    for (const auto& [x, c] : vars) h[x];
    std::size_t left = target > alpha.terminal_count() ? target - alpha.terminal_count() : 0;
    while (!vars.empty()) {
        std::vector<std::size_t> fits;
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i].second <= left) fits.push_back(i);
        if (fits.empty()) break;
        const auto& [x, c] = vars[fits[rng() % fits.size()]];
        h[x].push_back(letter(rng));
        left -= c;
    }
    Word w = apply_substitution(alpha, h);
    if (sigma > 1 && !w.empty()) {
        std::uniform_int_distribution<Letter> shift(1, sigma - 1);
        for (std::size_t i = 0; i < mutations; ++i) {
            Letter& c = w[rng() % w.size()];
            c = static_cast<Letter>((c - 1 + shift(rng)) % sigma + 1);
        }
    }
    if (images) *images = std::move(h);
    return w;
}

inline Instance random_instance(std::mt19937_64& rng, PatternKind kind, std::size_t n, std::size_t m,
                                Letter sigma, std::size_t vars, std::size_t mutations) {
    Instance inst;
    inst.pattern = random_pattern(rng, kind, m, sigma, vars);
    inst.word = planted_word(rng, inst.pattern, n, sigma, mutations);
    for (Letter a = 1; a <= sigma; ++a) inst.alphabet.names.push_back(std::to_string(a));
    return inst;
}

}  // namespace varpat

#endif
