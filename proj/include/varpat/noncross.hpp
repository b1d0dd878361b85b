#ifndef VARPAT_NONCROSS_HPP
#define VARPAT_NONCROSS_HPP

#include <cstddef>
#include <limits>
#include <map>
#include <vector>

#include "varpat/core.hpp"
#include "varpat/unary.hpp"

namespace varpat {

/// alpha = beta_1 ... beta_p, beta_l unary over vars[l], variables pairwise
/// distinct. Terminals between two variable zones belong to the earlier
/// block; leading terminals belong to the first one.
struct NonCrossDecomposition {
    std::vector<Pattern> blocks;
    std::vector<VarId> vars;
};

/// True iff no variable occurs strictly between two occurrences of another.
inline bool is_noncross(const Pattern& alpha) {
    std::map<VarId, std::size_t> last;
    for (std::size_t i = 0; i < alpha.size(); ++i)
        if (alpha[i].is_variable()) last[alpha[i].var()] = i;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (!alpha[i].is_variable()) continue;
        const std::size_t end = last[alpha[i].var()];
        for (std::size_t j = i + 1; j < end; ++j)
            if (alpha[j].is_variable() && alpha[j].var() != alpha[i].var()) return false;
    }
    return true;
}

inline NonCrossDecomposition decompose_noncross(const Pattern& alpha) {
    if (!is_noncross(alpha)) throw NotNonCross("pattern is not non-cross");
    NonCrossDecomposition out;
    std::size_t begin = 0;
    std::size_t i = 0;
    while (i < alpha.size() && alpha[i].is_terminal()) ++i;
    while (i < alpha.size()) {
        const VarId x = alpha[i].var();
        std::size_t j = i;
        // Extend to the first occurrence of a different variable.
        while (j < alpha.size() && !(alpha[j].is_variable() && alpha[j].var() != x)) ++j;
        out.blocks.push_back(alpha.slice(begin, j));
        out.vars.push_back(x);
        begin = j;
        i = j;
    }
    return out;
}

/// Dist[j][l] = d_HAM(beta_1...beta_l, w[1:j]) over rolling columns; the
/// split points are kept to rebuild a witness.
inline MatchResult min_mismatch_noncross(WordView w, const Pattern& alpha) {
    const NonCrossDecomposition dec = decompose_noncross(alpha);
    const std::size_t n = w.size();
    MatchResult out;
    if (dec.blocks.empty()) {
        if (alpha.size() == n) out.distance = substitution_distance(alpha, {}, w);
        return out;
    }

    constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
    const std::size_t p = dec.blocks.size();
    std::vector<std::uint64_t> prev(n + 1, kInf), cur(n + 1, kInf);
    std::vector<std::vector<std::size_t>> split(p, std::vector<std::size_t>(n + 1, 0));
    for (std::size_t j = 0; j <= n; ++j) {
        const UnaryResult r = min_mismatch_1var(factor(w, 1, j), dec.blocks[0]);
        prev[j] = r.distance.value_or(kInf);
    }
    for (std::size_t l = 1; l < p; ++l) {
        std::fill(cur.begin(), cur.end(), kInf);
        for (std::size_t j = 0; j <= n; ++j) {
            for (std::size_t jp = 0; jp <= j; ++jp) {
                if (prev[jp] == kInf) continue;
                const UnaryResult r = min_mismatch_1var(factor(w, jp + 1, j), dec.blocks[l]);
                if (r.distance.is_infinite()) continue;
                const std::uint64_t cand = prev[jp] + r.distance.value();
                if (cand < cur[j]) {
                    cur[j] = cand;
                    split[l][j] = jp;
                }
            }
        }
        prev.swap(cur);
    }
    if (prev[n] == kInf) return out;
    out.distance = prev[n];

    std::size_t end = n;
    for (std::size_t l = p; l-- > 0;) {
        const std::size_t begin = l == 0 ? 0 : split[l][end];
        out.witness[dec.vars[l]] = min_mismatch_1var(factor(w, begin + 1, end), dec.blocks[l]).image;
        end = begin;
    }
    return out;
}

}  // namespace varpat

#endif
