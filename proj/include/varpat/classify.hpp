#ifndef VARPAT_CLASSIFY_HPP
#define VARPAT_CLASSIFY_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "varpat/core.hpp"
#include "varpat/noncross.hpp"

namespace varpat {

/// Ordering of var(alpha); `k` is the largest number of marked blocks seen
/// while marking the skeleton in this order.
struct MarkingSequence {
    std::vector<VarId> order;
    std::size_t k = 0;
};

struct PatternClass {
    bool is_regular = false;
    bool is_unary = false;
    bool is_noncross = false;
    bool is_one_rep_var = false;
    std::size_t variable_count = 0;
    std::size_t scd = 0;
    /// The repeated variable when there is exactly one; for unary patterns
    /// the single variable.
    std::optional<VarId> repeated;
    /// Number of x-blocks of `repeated` (0 when there is none).
    std::size_t x_block_count = 0;
    std::size_t locality = 0;
    MarkingSequence marking;
    /// False when locality is only an upper bound (too many variables for
    /// the exhaustive search).
    bool locality_exact = true;

    std::string label() const {
        if (is_unary) return "1Var";
        if (is_regular) return "Reg";
        if (is_noncross) return "NonCross";
        if (is_one_rep_var) return "1RepVar";
        return std::to_string(locality) + "LOC";
    }
};

namespace detail {

/// Skeleton of alpha (terminals removed) as dense variable indices into
/// `vars` (first-occurrence order).
struct Skeleton {
    std::vector<VarId> vars;
    std::vector<std::uint32_t> seq;

    explicit Skeleton(const Pattern& alpha) : vars(alpha.variables()) {
        std::map<VarId, std::uint32_t> dense;
        for (std::uint32_t i = 0; i < vars.size(); ++i) dense[vars[i]] = i;
        for (const Symbol& s : alpha)
            if (s.is_variable()) seq.push_back(dense[s.var()]);
    }

    /// Number of maximal runs of marked skeleton positions.
    std::size_t blocks(std::uint64_t marked) const {
        std::size_t count = 0;
        bool inside = false;
        for (std::uint32_t v : seq) {
            const bool m = (marked >> v) & 1U;
            if (m && !inside) ++count;
            inside = m;
        }
        return count;
    }
};

inline constexpr std::size_t kExactMarkingLimit = 20;

/// best[S] = smallest achievable maximum block count over all completions of
/// the marked set S (S included).
inline std::vector<std::uint8_t> marking_table(const Skeleton& sk) {
    const std::size_t p = sk.vars.size();
    const std::uint64_t full = (std::uint64_t{1} << p) - 1;
    std::vector<std::uint8_t> best(std::size_t{1} << p, 0);
    for (std::uint64_t s = full + 1; s-- > 0;) {
        const auto here = static_cast<std::uint8_t>(std::min<std::size_t>(sk.blocks(s), 255));
        if (s == full) {
            best[s] = here;
            continue;
        }
        std::uint8_t rest = 255;
        for (std::size_t v = 0; v < p; ++v)
            if (!((s >> v) & 1U)) rest = std::min(rest, best[s | (std::uint64_t{1} << v)]);
        best[s] = std::max(here, rest);
    }
    return best;
}

inline MarkingSequence follow_table(const Skeleton& sk, const std::vector<std::uint8_t>& best) {
    MarkingSequence out;
    const std::size_t p = sk.vars.size();
    std::uint64_t s = 0;
    out.k = best[0];
    for (std::size_t step = 0; step < p; ++step) {
        std::size_t pick = p;
        for (std::size_t v = 0; v < p; ++v) {
            if ((s >> v) & 1U) continue;
            if (pick == p || best[s | (std::uint64_t{1} << v)] < best[s | (std::uint64_t{1} << pick)]) pick = v;
        }
        s |= std::uint64_t{1} << pick;
        out.order.push_back(sk.vars[pick]);
    }
    return out;
}

/// Marks the variable that keeps the block count smallest at each step.
inline MarkingSequence greedy_marking(const Skeleton& sk) {
    MarkingSequence out;
    const std::size_t p = sk.vars.size();
    std::vector<bool> used(p, false);
    std::vector<std::uint32_t> marked(sk.seq.size(), 0);
    for (std::size_t step = 0; step < p; ++step) {
        std::size_t pick = p, pick_blocks = 0;
        for (std::size_t v = 0; v < p; ++v) {
            if (used[v]) continue;
            std::size_t count = 0;
            bool inside = false;
            for (std::size_t i = 0; i < sk.seq.size(); ++i) {
                const bool m = marked[i] != 0 || sk.seq[i] == v;
                if (m && !inside) ++count;
                inside = m;
            }
            if (pick == p || count < pick_blocks) {
                pick = v;
                pick_blocks = count;
            }
        }
        used[pick] = true;
        for (std::size_t i = 0; i < sk.seq.size(); ++i)
            if (sk.seq[i] == pick) marked[i] = 1;
        out.order.push_back(sk.vars[pick]);
        out.k = std::max(out.k, pick_blocks);
    }
    return out;
}

}  // namespace detail

/// Largest block count met while marking alpha in `order`; throws
/// InvalidWitness unless `order` is a permutation of var(alpha).
inline std::size_t marking_width(const Pattern& alpha, const std::vector<VarId>& order) {
    std::vector<VarId> vars = alpha.variables();
    std::vector<VarId> sorted_order = order;
    std::sort(vars.begin(), vars.end());
    std::sort(sorted_order.begin(), sorted_order.end());
    if (vars != sorted_order) throw InvalidWitness("marking sequence is not a permutation of the pattern variables");
    std::vector<bool> marked;
    std::vector<VarId> skeleton;
    for (const Symbol& s : alpha)
        if (s.is_variable()) skeleton.push_back(s.var());
    marked.assign(skeleton.size(), false);
    std::size_t width = 0;
    for (VarId x : order) {
        for (std::size_t i = 0; i < skeleton.size(); ++i)
            if (skeleton[i] == x) marked[i] = true;
        std::size_t count = 0;
        for (std::size_t i = 0; i < skeleton.size(); ++i)
            if (marked[i] && (i == 0 || !marked[i - 1])) ++count;
        width = std::max(width, count);
    }
    return width;
}

/// A witness for k-locality, or nullopt when alpha is not k-local. Searches
/// marked-variable subsets with memoized dead ends.
inline std::optional<MarkingSequence> find_marking_sequence(const Pattern& alpha, std::size_t k,
                                                            std::uint64_t budget = 10'000'000) {
    const detail::Skeleton sk(alpha);
    const std::size_t p = sk.vars.size();
    if (p == 0) return MarkingSequence{};
    if (is_noncross(alpha)) return MarkingSequence{sk.vars, 1};
    if (k == 0) return std::nullopt;
    if (p > 64) throw BudgetExceeded("marking search over more than 64 variables", p, 64);

    const std::uint64_t full = p == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << p) - 1;
    std::unordered_set<std::uint64_t> dead;
    std::vector<std::uint32_t> path;
    std::uint64_t visits = 0;
    auto search = [&](auto&& self, std::uint64_t s) -> bool {
        if (s == full) return true;
        if (dead.count(s)) return false;
        if (++visits > budget) throw BudgetExceeded("marking sequence search", visits, budget);
        for (std::uint32_t v = 0; v < p; ++v) {
            const std::uint64_t t = s | (std::uint64_t{1} << v);
            if (t == s || sk.blocks(t) > k) continue;
            path.push_back(v);
            if (self(self, t)) return true;
            path.pop_back();
        }
        dead.insert(s);
        return false;
    };
    if (!search(search, 0)) return std::nullopt;
    MarkingSequence out;
    for (std::uint32_t v : path) out.order.push_back(sk.vars[v]);
    out.k = marking_width(alpha, out.order);
    return out;
}

/// Maximum number of variables whose scopes share a position.
inline std::size_t scope_coincidence_degree(const Pattern& alpha) {
    std::map<VarId, std::pair<std::size_t, std::size_t>> scope;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (!alpha[i].is_variable()) continue;
        auto [it, fresh] = scope.try_emplace(alpha[i].var(), i, i);
        if (!fresh) it->second.second = i;
    }
    std::vector<int> delta(alpha.size() + 1, 0);
    for (const auto& [x, sc] : scope) {
        ++delta[sc.first];
        --delta[sc.second + 1];
    }
    std::size_t best = 0;
    int open = 0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        open += delta[i];
        best = std::max(best, static_cast<std::size_t>(open));
    }
    return best;
}

/// Number of x-blocks: maximal factors with x as only variable.
inline std::size_t x_block_count(const Pattern& alpha, VarId x) {
    std::size_t count = 0;
    bool inside = false;
    for (const Symbol& s : alpha) {
        if (!s.is_variable()) continue;
        const bool is_x = s.var() == x;
        if (is_x && !inside) ++count;
        inside = is_x;
    }
    return count;
}

inline PatternClass classify(const Pattern& alpha) {
    PatternClass c;
    const auto counts = alpha.occurrence_counts();
    c.variable_count = counts.size();
    std::size_t repeated = 0;
    for (const auto& [x, n] : counts)
        if (n > 1) {
            ++repeated;
            c.repeated = x;
        }
    c.is_regular = repeated == 0;
    c.is_unary = counts.size() == 1;
    if (c.is_unary) c.repeated = counts.begin()->first;
    if (repeated > 1) c.repeated.reset();
    c.is_one_rep_var = repeated <= 1;
    c.scd = scope_coincidence_degree(alpha);
    c.is_noncross = c.variable_count == 0 || c.scd == 1;
    if (c.repeated) c.x_block_count = x_block_count(alpha, *c.repeated);

    const detail::Skeleton sk(alpha);
    if (c.variable_count == 0) {
        c.locality = 0;
    } else if (c.is_noncross) {
        c.marking = MarkingSequence{sk.vars, 1};
        c.locality = 1;
    } else if (sk.vars.size() <= detail::kExactMarkingLimit) {
        c.marking = detail::follow_table(sk, detail::marking_table(sk));
        c.locality = c.marking.k;
    } else {
        c.marking = detail::greedy_marking(sk);
        c.locality = c.marking.k;
        c.locality_exact = false;
    }
    return c;
}

}  // namespace varpat

#endif
