#ifndef VARPAT_ONEREP_HPP
#define VARPAT_ONEREP_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "varpat/core.hpp"
#include "varpat/lcs_index.hpp"
#include "varpat/regular.hpp"
#include "varpat/unary.hpp"

namespace varpat {

/// alpha = gamma_0 beta_1 gamma_1 ... beta_k gamma_k with beta_i the
/// x-blocks; ranges are half-open symbol ranges of the pattern.
struct OneRepDecomposition {
    VarId x;
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    std::vector<std::pair<std::size_t, std::size_t>> gaps;
};

struct PtasConfig {
    std::size_t r = 3;
    bool union_approx2 = true;
};

/// Guaranteed ratio of ptas_1repvar with sample size r over sigma letters:
/// min{2, 1 + (4 sigma - 4) / (sqrt(e) (sqrt(4r + 1) - 3))}. The second
/// term needs r >= 3; below that only 2 holds (with the approx2 union).
inline double ptas_ratio(std::size_t r, std::size_t sigma) {
    if (r < 3 || sigma <= 1) return sigma <= 1 ? 1.0 : 2.0;
    const double rho = 1.0 + (4.0 * static_cast<double>(sigma) - 4.0) /
                                 (std::sqrt(std::exp(1.0)) * (std::sqrt(4.0 * static_cast<double>(r) + 1.0) - 3.0));
    return std::min(2.0, rho);
}

inline std::optional<VarId> repeated_variable(const Pattern& alpha) {
    std::optional<VarId> x;
    for (const auto& [v, count] : alpha.occurrence_counts()) {
        if (count < 2) continue;
        if (x) throw NotOneRepVar("more than one repeated variable: " + alpha.name(*x) + ", " + alpha.name(v));
        x = v;
    }
    return x;
}

inline OneRepDecomposition decompose_onerep(const Pattern& alpha, VarId x) {
    OneRepDecomposition out;
    out.x = x;
    const std::size_t m = alpha.size();
    // Positions of variables other than x bound the x-blocks.
    std::size_t i = 0;
    std::size_t gap_begin = 0;
    while (i < m) {
        if (!(alpha[i].is_variable() && alpha[i].var() == x)) {
            ++i;
            continue;
        }
        std::size_t lo = i;
        while (lo > gap_begin && alpha[lo - 1].is_terminal()) --lo;
        std::size_t hi = i;
        while (hi < m && !(alpha[hi].is_variable() && alpha[hi].var() != x)) ++hi;
        out.gaps.emplace_back(gap_begin, lo);
        out.blocks.emplace_back(lo, hi);
        gap_begin = hi;
        i = hi;
    }
    out.gaps.emplace_back(gap_begin, m);
    return out;
}

namespace detail {

/// Exact solver for a peeled 1RepVar core with repeated (or sole) variable x.
class OneRepSolver {
public:
    OneRepSolver(WordView w, const Pattern& core, VarId x)
        : w_(w), n_(w.size()), core_(core), x_(x), dec_(decompose_onerep(core, x)) {
        for (std::size_t i = 0; i < core_.size(); ++i) {
            u_pos_.push_back(u_.size() + 1);
            if (core_[i].is_terminal()) u_.push_back(core_[i].letter());
        }
        for (const auto& [b, e] : dec_.blocks) blocks_.push_back(make_block(b, e));
        for (const auto& [b, e] : dec_.gaps) {
            Gap g;
            g.empty = b == e;
            g.layout = layout_of(b, e, false);
            if (!g.empty) g.rp = RegularPattern::from_core(core_.slice(b, e));
            gaps_.push_back(std::move(g));
        }
        for (const Block& b : blocks_) {
            total_terminals_ += b.terminals;
            total_occ_ += b.occurrences;
        }
        for (const Gap& g : gaps_) total_terminals_ += g.layout.minimum_length();
    }

    MatchResult solve() {
        MatchResult out;
        if (total_terminals_ > n_) return out;
        fwd_.emplace(w_, u_);
        const Word rw = reversed(w_);
        const Word ru = reversed(u_);
        rev_.emplace(rw, ru);
        for (std::size_t budget = 0;; budget = budget == 0 ? 1 : 2 * budget) {
            const std::size_t b = std::min(budget, n_);
            if (run(b)) return witness();
            if (b == n_) return out;
        }
    }

private:
    struct Piece {
        std::size_t terminals_before;
        std::size_t x_before;
        Interval u_span;
    };
    struct Block {
        std::size_t terminals = 0;
        std::size_t occurrences = 0;
        std::vector<Piece> pieces;
        std::vector<std::pair<std::size_t, std::size_t>> x_offsets;  // (terminals, x) before each x
        std::size_t length(std::size_t len) const { return terminals + occurrences * len; }
    };
    struct Gap {
        bool empty = true;
        BlockLayout layout;
        RegularPattern rp;
    };

    Block make_block(std::size_t b, std::size_t e) const {
        Block out;
        std::size_t i = b;
        while (i < e) {
            if (core_[i].is_variable()) {
                out.x_offsets.emplace_back(out.terminals, out.occurrences);
                ++out.occurrences;
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < e && core_[j].is_terminal()) ++j;
            out.pieces.push_back(Piece{out.terminals, out.occurrences, Interval{u_pos_[i], u_pos_[i] + (j - i) - 1}});
            out.terminals += j - i;
            i = j;
        }
        return out;
    }

    /// Terminal runs of symbols [b, e) as a layout over u (or reversed u).
    BlockLayout layout_of(std::size_t b, std::size_t e, bool reverse) const {
        BlockLayout lay;
        std::size_t i = b;
        while (i < e) {
            if (core_[i].is_variable()) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < e && core_[j].is_terminal()) ++j;
            Interval span{u_pos_[i], u_pos_[i] + (j - i) - 1};
            if (reverse) span = Interval{u_.size() + 1 - span.last, u_.size() + 1 - span.first};
            lay.blocks.push_back(span);
            i = j;
        }
        if (reverse) std::reverse(lay.blocks.begin(), lay.blocks.end());
        lay.min_gap.assign(lay.blocks.size() + 1, 0);
        return lay;
    }

    /// Mismatches of block i's terminals placed at h, or cap + 1.
    std::size_t term_cost(std::size_t i, std::size_t h, std::size_t len, std::size_t cap) const {
        std::size_t total = 0;
        for (const Piece& p : blocks_[i].pieces) {
            const std::size_t start = h + p.terminals_before + p.x_before * len;
            const std::size_t t =
                bounded_mismatch(*fwd_, Interval{start, start + p.u_span.length() - 1}, p.u_span, cap - total);
            total += t;
            if (total > cap) return cap + 1;
        }
        return total;
    }

    std::size_t gap_distance(std::size_t g, std::size_t first, std::size_t last, std::size_t cap) {
        const Gap& gap = gaps_[g];
        if (gap.empty) return first == last + 1 ? 0 : cap + 1;
        const auto key = std::make_tuple(g, first, last);
        auto it = gap_memo_.find(key);
        if (it != gap_memo_.end()) {
            const auto [value, used_cap] = it->second;
            if (value <= used_cap || cap <= used_cap) return std::min(value, cap + 1);
        }
        const std::size_t value = window_distance(*fwd_, Interval{first, last}, gap.layout, cap);
        gap_memo_[key] = {value, cap};
        return value;
    }

    std::size_t median_cost(std::size_t len, const std::vector<std::size_t>& h, Word* image) {
        std::vector<std::size_t> starts;
        for (std::size_t i = 0; i < blocks_.size(); ++i)
            for (const auto& [t, xs] : blocks_[i].x_offsets) starts.push_back(h[i] + t + xs * len - 1);
        return median_of_windows(w_, starts, len, counter_, image);
    }

    /// Searches for a configuration of total cost <= budget; keeps the first
    /// optimal one in (len, h_1, ..., h_k) order.
    bool run(std::size_t budget) {
        const std::size_t k = blocks_.size();
        // pre[i][e] bounds the cost of everything before block i against
        // w[1:e]; suf[i][s] that of everything after it against w[s:n].
        std::vector<std::vector<std::size_t>> pre(k), suf(k);
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t begin = dec_.blocks[i].first;
            const std::size_t end = dec_.blocks[i].second;
            if (begin == 0) {
                pre[i].assign(n_ + 1, budget + 1);
                pre[i][0] = 0;
            } else {
                const BlockLayout lay = layout_of(0, begin, true);
                const std::vector<std::size_t> prof = suffix_profile(*rev_, Interval{1, n_}, lay, budget);
                pre[i].resize(n_ + 1);
                for (std::size_t e = 0; e <= n_; ++e) pre[i][e] = prof[n_ - e];
            }
            if (end == core_.size()) {
                suf[i].assign(n_ + 2, budget + 1);
                suf[i][n_ + 1] = 0;
            } else {
                const BlockLayout lay = layout_of(end, core_.size(), false);
                const std::vector<std::size_t> prof = suffix_profile(*fwd_, Interval{1, n_}, lay, budget);
                suf[i].assign(n_ + 2, budget + 1);
                for (std::size_t s = 1; s <= n_ + 1; ++s) suf[i][s] = prof[s - 1];
            }
        }
        std::vector<std::size_t> lo(k), hi(k);
        for (std::size_t i = 0; i < k; ++i) {
            lo[i] = 0;
            while (lo[i] <= n_ && pre[i][lo[i]] > budget) ++lo[i];
            hi[i] = n_ + 1;
            while (hi[i] >= 1 && suf[i][hi[i]] > budget) --hi[i];
        }

        found_ = false;
        stop_ = false;
        limit_ = budget;
        const std::size_t max_len = (n_ - total_terminals_) / total_occ_;
        std::vector<std::vector<std::pair<std::size_t, std::size_t>>> cand(k);  // (h, term cost)
        std::vector<std::size_t> h(k, 0);
        for (std::size_t len = 0; len <= max_len; ++len) {
            std::vector<std::size_t> before(k, 0), after(k, 0);
            for (std::size_t i = 1; i < k; ++i) before[i] = before[i - 1] + blocks_[i - 1].length(len);
            for (std::size_t i = k - 1; i-- > 0;) after[i] = after[i + 1] + blocks_[i + 1].length(len);
            bool empty = false;
            for (std::size_t i = 0; i < k && !empty; ++i) {
                cand[i].clear();
                const std::size_t L = blocks_[i].length(len);
                if (lo[i] > n_ || hi[i] < 1) {
                    empty = true;
                    break;
                }
                const std::size_t first = std::max(lo[i] + 1, before[i] + 1);
                if (n_ + 1 < after[i] + L) {
                    empty = true;
                    break;
                }
                std::size_t last = n_ + 1 - after[i] - L;  // largest start with block inside
                if (hi[i] < L) {
                    empty = true;
                    break;
                }
                last = std::min(last, hi[i] - L);
                for (std::size_t s = first; s <= last; ++s) {
                    const std::size_t outer = pre[i][s - 1] + suf[i][s + L];
                    if (outer > limit_) continue;
                    const std::size_t t = term_cost(i, s, len, limit_ - outer);
                    if (outer + t <= limit_) cand[i].emplace_back(s, t);
                }
                empty = cand[i].empty();
            }
            if (empty) continue;
            search(0, 0, 0, len, cand, suf, h);
        }
        return found_;
    }

    void search(std::size_t i, std::size_t prev_end, std::size_t cost, std::size_t len,
                const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& cand,
                const std::vector<std::vector<std::size_t>>& suf, std::vector<std::size_t>& h) {
        const std::size_t k = blocks_.size();
        if (i == k) {
            if (cost > limit_) return;
            const std::size_t g = gap_distance(k, prev_end + 1, n_, limit_ - cost);
            if (cost + g > limit_) return;
            const std::size_t med = median_cost(len, h, nullptr);
            const std::size_t total = cost + g + med;
            if (total > limit_) return;
            found_ = true;
            best_ = total;
            best_len_ = len;
            best_h_ = h;
            if (total == 0) {
                limit_ = 0;
                stop_ = true;
                return;
            }
            limit_ = total - 1;
            return;
        }
        const std::size_t L = blocks_[i].length(len);
        for (const auto& [s, t] : cand[i]) {
            if (stop_) return;
            if (s < prev_end + 1) continue;
            const std::size_t rest = suf[i][s + L];
            if (cost + t + rest > limit_) continue;
            const std::size_t g = gap_distance(i, prev_end + 1, s - 1, limit_ - cost - t - rest);
            if (cost + t + rest + g > limit_) continue;
            h[i] = s;
            search(i + 1, s + L - 1, cost + t + g, len, cand, suf, h);
        }
    }

    MatchResult witness() {
        MatchResult out;
        out.distance = best_;
        const std::size_t len = best_len_;
        Word image;
        median_cost(len, best_h_, &image);
        out.witness[x_] = image;
        std::size_t cursor = 1;
        for (std::size_t g = 0; g < gaps_.size(); ++g) {
            const std::size_t end = g < blocks_.size() ? best_h_[g] - 1 : n_;
            const Gap& gap = gaps_[g];
            if (!gap.empty) {
                const Interval window{cursor, end};
                const std::size_t d = window_distance(*fwd_, window, gap.layout, best_);
                std::vector<std::size_t> starts;
                if (!gap.layout.blocks.empty()) {
                    const SufMatrix full = suf_scan(*fwd_, window, gap.layout, d, true);
                    starts = block_starts(*fwd_, full, gap.layout, d);
                }
                for (auto& [v, img] : gap_substitution(w_, window, gap.rp, starts)) out.witness[v] = img;
            }
            if (g < blocks_.size()) cursor = best_h_[g] + blocks_[g].length(len);
        }
        return out;
    }

    WordView w_;
    std::size_t n_;
    const Pattern& core_;
    VarId x_;
    OneRepDecomposition dec_;
    Word u_;
    std::vector<std::size_t> u_pos_;
    std::vector<Block> blocks_;
    std::vector<Gap> gaps_;
    std::size_t total_terminals_ = 0;
    std::size_t total_occ_ = 0;
    std::optional<LcsIndex> fwd_;
    std::optional<LcsIndex> rev_;
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>> gap_memo_;
    ColumnCounter counter_;

    bool found_ = false;
    bool stop_ = false;
    std::size_t limit_ = 0;
    std::size_t best_ = 0;
    std::size_t best_len_ = 0;
    std::vector<std::size_t> best_h_;
};

/// alpha with every occurrence of x replaced by the terminals of u.
inline Pattern substitute_variable(const Pattern& alpha, VarId x, WordView u) {
    std::vector<Symbol> out;
    for (const Symbol& s : alpha) {
        if (s.is_variable() && s.var() == x) {
            for (Letter a : u) out.push_back(Symbol::terminal(a));
        } else {
            out.push_back(s);
        }
    }
    return Pattern(std::move(out), alpha.names());
}

inline MatchResult solve_with_image(WordView w, const Pattern& alpha, VarId x, WordView u) {
    MatchResult r = min_mismatch_reg(w, substitute_variable(alpha, x, u), RegOptions{.want_witness = true, .trace = {}});
    if (r.distance.is_finite()) r.witness[x] = Word(u.begin(), u.end());
    return r;
}

inline void keep_better(MatchResult& best, MatchResult&& cand) {
    if (cand.distance < best.distance) best = std::move(cand);
}

}  // namespace detail

/// Exact d_HAM(alpha, w) for patterns with at most one repeated variable.
inline MatchResult min_mismatch_1repvar(WordView w, const Pattern& alpha) {
    const std::optional<VarId> rep = repeated_variable(alpha);
    const PeeledInstance peeled = peel_affixes(alpha, w);
    MatchResult out;
    if (!peeled.feasible) return out;
    if (peeled.core_pattern.empty()) {
        out.distance = peeled.affix_mismatches;
        return out;
    }
    const std::vector<VarId> vars = peeled.core_pattern.variables();
    if (!rep && vars.size() > 1) {
        out = min_mismatch_reg(peeled.core_word, RegularPattern::from_core(peeled.core_pattern),
                               RegOptions{.want_witness = true, .trace = {}});
    } else {
        detail::OneRepSolver solver(peeled.core_word, peeled.core_pattern, rep ? *rep : vars.front());
        out = solver.solve();
    }
    out.distance = out.distance + Distance(peeled.affix_mismatches);
    return out;
}

/// Best over x := u for every factor u of w (at most twice the optimum).
inline MatchResult approx2_1repvar(WordView w, const Pattern& alpha) {
    const std::optional<VarId> rep = repeated_variable(alpha);
    if (!rep) return min_mismatch_reg(w, alpha, RegOptions{.want_witness = true, .trace = {}});
    const std::size_t n = w.size();
    const std::size_t terminals = alpha.terminal_count();
    const std::size_t occ = alpha.occurrences(*rep);
    MatchResult best;
    std::set<Word> tried;
    for (std::size_t len = 0; terminals + occ * len <= n; ++len) {
        for (std::size_t i = 1; i + len <= n + 1; ++i) {
            WordView u = factor(w, i, i + len - 1);
            if (!tried.emplace(u.begin(), u.end()).second) continue;
            detail::keep_better(best, detail::solve_with_image(w, alpha, *rep, u));
            if (best.distance == Distance(0)) return best;
        }
    }
    return best;
}

/// For len <= n / r and every multiset of r length-len factors: x := their
/// median, solved as a regular pattern. Optionally unioned with approx2.
inline MatchResult ptas_1repvar(WordView w, const Pattern& alpha, const PtasConfig& cfg = {}) {
    if (cfg.r == 0) throw std::invalid_argument("ptas_1repvar: r must be at least 1");
    const std::optional<VarId> rep = repeated_variable(alpha);
    if (!rep) return min_mismatch_reg(w, alpha, RegOptions{.want_witness = true, .trace = {}});
    const std::size_t n = w.size();
    const std::size_t terminals = alpha.terminal_count();
    const std::size_t occ = alpha.occurrences(*rep);
    MatchResult best;
    std::set<Word> tried;
    for (std::size_t len = 0; len * cfg.r <= n; ++len) {
        if (terminals + occ * len > n) break;
        const std::size_t starts = n - len + 1;
        std::vector<std::size_t> pick(cfg.r, 1);  // non-decreasing start positions
        while (true) {
            std::vector<Word> sample;
            for (std::size_t s : pick) {
                WordView u = factor(w, s, s + len - 1);
                sample.emplace_back(u.begin(), u.end());
            }
            Word med = median_string(sample).median;
            if (tried.insert(med).second) {
                detail::keep_better(best, detail::solve_with_image(w, alpha, *rep, med));
                if (best.distance == Distance(0)) return best;
            }
            std::size_t j = cfg.r;
            while (j > 0 && pick[j - 1] == starts) --j;
            if (j == 0) break;
            ++pick[j - 1];
            for (std::size_t q = j; q < cfg.r; ++q) pick[q] = pick[j - 1];
        }
    }
    if (cfg.union_approx2) detail::keep_better(best, approx2_1repvar(w, alpha));
    return best;
}

}  // namespace varpat

#endif
