#ifndef VARPAT_REGULAR_HPP
#define VARPAT_REGULAR_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "varpat/core.hpp"
#include "varpat/lcs_index.hpp"

namespace varpat {

/// A peeled regular pattern G_0 B_1 G_1 ... B_R G_R: nonempty terminal blocks
/// B_r separated by nonempty runs of variables G_r. `terminals` is the
/// concatenation B_1...B_R and `blocks` are 1-based spans into it.
struct RegularPattern {
    Word terminals;
    std::vector<Interval> blocks;
    std::vector<std::vector<VarId>> gaps;
    /// Minimum image length of each variable run. All zero unless built in
    /// strict mode, where interior runs must be nonempty.
    std::vector<std::size_t> min_gap;

    std::size_t block_count() const noexcept { return blocks.size(); }
    /// Number of variable runs (M in the Pi(x_i w_i) x_M normal form).
    std::size_t variable_runs() const noexcept { return gaps.size(); }

    WordView block(std::size_t r) const {
        return WordView(terminals).subspan(blocks[r].first - 1, blocks[r].length());
    }

    std::size_t minimum_length() const {
        std::size_t total = terminals.size();
        for (std::size_t g : min_gap) total += g;
        return total;
    }

    /// Builds the block structure of a core pattern, which must be regular
    /// and start and end with a variable.
    static RegularPattern from_core(const Pattern& core, bool strict = false) {
        if (core.empty() || core[0].is_terminal() || core[core.size() - 1].is_terminal())
            throw std::invalid_argument("regular core must start and end with a variable");
        for (const auto& [x, count] : core.occurrence_counts())
            if (count > 1) throw std::invalid_argument("pattern is not regular: " + core.name(x) + " repeats");

        RegularPattern rp;
        rp.gaps.emplace_back();
        for (const Symbol& s : core) {
            if (s.is_variable()) {
                if (!rp.blocks.empty() && rp.gaps.size() == rp.blocks.size()) rp.gaps.emplace_back();
                rp.gaps.back().push_back(s.var());
            } else {
                if (rp.blocks.size() < rp.gaps.size()) {
                    rp.blocks.push_back(Interval{rp.terminals.size() + 1, rp.terminals.size()});
                }
                rp.terminals.push_back(s.letter());
                rp.blocks.back().last = rp.terminals.size();
            }
        }
        rp.min_gap.assign(rp.gaps.size(), 0);
        if (strict)
            for (std::size_t r = 1; r + 1 < rp.gaps.size(); ++r) rp.min_gap[r] = 1;
        return rp;
    }
};

/// One event of the Suf-row interval-queue scan.
struct SufTraceEvent {
    enum class Kind { push, pop, query };
    Kind kind;
    std::size_t row;       // 1-based block index
    std::size_t position;  // window end i under consideration
    std::size_t d_low;     // affected budget range [d_low:d_high]
    std::size_t d_high;
    std::size_t t;         // mismatch count (query/pop)
};

using SufTrace = std::function<void(const SufTraceEvent&)>;

/// Suf[r][d] = g > 0 iff w[g:n] is the shortest suffix matched by the
/// pattern suffix starting at block r with <= d mismatches (g is the start of
/// block r); 0 when no such suffix exists. rows[r-1] holds row r. Unless the
/// full matrix was requested only row 1 is retained.
struct SufMatrix {
    std::size_t delta = 0;
    std::vector<std::vector<std::size_t>> rows;
    bool complete = false;
};

struct RegOptions {
    bool strict = false;
    bool keep_matrix = false;
    bool want_witness = false;
    SufTrace trace = {};
};

namespace detail {

struct BlockLayout {
    std::vector<Interval> blocks;
    std::vector<std::size_t> min_gap;

    static BlockLayout of(const RegularPattern& rp) { return BlockLayout{rp.blocks, rp.min_gap}; }

    std::size_t minimum_length() const {
        std::size_t total = 0;
        for (const Interval& b : blocks) total += b.length();
        for (std::size_t g : min_gap) total += g;
        return total;
    }
};

/// Computes the Suf rows for `layout` aligned inside w[window] (word of idx),
/// blocks being spans of the index's second word. rows[0] is row 1.
inline SufMatrix suf_scan(const LcsIndex& idx, Interval window, const BlockLayout& layout, std::size_t delta,
                          bool keep_all, const SufTrace* trace = nullptr) {
    using sidx = std::ptrdiff_t;
    const std::size_t blocks = layout.blocks.size();
    SufMatrix out;
    out.delta = delta;
    out.complete = keep_all;
    if (blocks == 0) return out;

    std::vector<std::size_t> row(delta + 1, 0);
    std::vector<std::size_t> prev;
    std::vector<std::vector<std::size_t>> kept;

    // Last block: rightmost window with at most d mismatches.
    {
        const Interval b = layout.blocks[blocks - 1];
        const std::size_t len = b.length();
        if (window.length() >= len + layout.min_gap[blocks]) {
            const Interval sub{window.first, window.last - layout.min_gap[blocks]};
            const std::vector<std::size_t> dist = sliding_mismatch_array(idx, sub, b, delta);
            std::size_t filled = delta + 1;
            for (std::size_t k = dist.size(); k-- > 0 && filled > 0;) {
                if (dist[k] < filled) {
                    for (std::size_t d = dist[k]; d < filled; ++d) row[d] = sub.first + k;
                    filled = dist[k];
                }
            }
        }
    }
    if (keep_all) kept.push_back(row);

    for (std::size_t r = blocks - 1; r >= 1; --r) {
        prev.swap(row);
        row.assign(delta + 1, 0);
        const Interval b = layout.blocks[r - 1];
        const auto len = static_cast<sidx>(b.length());
        const auto gap = static_cast<sidx>(layout.min_gap[r]);
        const sidx lowest_end = static_cast<sidx>(window.first) + len - 1;
        // Largest end position of block r that still leaves room for the rest
        // with budget d; -1 when the rest is unmatched with budget d.
        auto threshold = [&](sidx d) -> sidx {
            const std::size_t g = prev[static_cast<std::size_t>(d)];
            return g == 0 ? -1 : static_cast<sidx>(g) - gap - 1;
        };
        auto emit = [&](SufTraceEvent::Kind kind, sidx pos, sidx lo, sidx hi, std::size_t t) {
            if (trace != nullptr && *trace)
                (*trace)(SufTraceEvent{kind, r, static_cast<std::size_t>(std::max<sidx>(pos, 0)),
                                       static_cast<std::size_t>(lo), static_cast<std::size_t>(hi), t});
        };

        if (prev[delta] != 0) {
            // Queue Q = [newest:oldest]; empty when oldest < newest.
            sidx newest = static_cast<sidx>(delta);
            sidx oldest = newest;
            sidx i = threshold(newest);
            emit(SufTraceEvent::Kind::push, i, newest, newest, 0);
            while (newest > 0 && threshold(newest - 1) >= i) {
                --newest;
                emit(SufTraceEvent::Kind::push, i, newest, newest, 0);
            }
            while (i >= lowest_end) {
                if (oldest >= newest) {
                    const auto q = static_cast<std::size_t>(oldest - newest + 1);
                    const Interval span{static_cast<std::size_t>(i - len + 1), static_cast<std::size_t>(i)};
                    const std::size_t t = bounded_mismatch(idx, span, b, q - 1);
                    emit(SufTraceEvent::Kind::query, i, newest, oldest, t);
                    if (t < q) {
                        const sidx from = newest + static_cast<sidx>(t);
                        for (sidx d = from; d <= oldest; ++d) row[static_cast<std::size_t>(d)] = span.first;
                        emit(SufTraceEvent::Kind::pop, i, from, oldest, t);
                        oldest = from - 1;
                    }
                }
                sidx next = i - 1;
                if (oldest < newest) {
                    if (newest == 0 || threshold(newest - 1) < 0) break;
                    next = std::min(next, threshold(newest - 1));
                }
                while (newest > 0 && threshold(newest - 1) >= next) {
                    --newest;
                    emit(SufTraceEvent::Kind::push, next, newest, newest, 0);
                }
                i = next;
            }
        }
        if (keep_all) kept.push_back(row);
    }

    if (keep_all) {
        std::reverse(kept.begin(), kept.end());
        out.rows = std::move(kept);
    } else {
        out.rows.push_back(std::move(row));
    }
    return out;
}

inline constexpr std::size_t kBeyond = std::numeric_limits<std::size_t>::max();

/// Distance of the layout against w[start:window.last] read off row 1;
/// kBeyond when it exceeds the scanned budget.
inline std::size_t distance_from_row(const SufMatrix& suf, const BlockLayout& layout, std::size_t start,
                                     std::size_t window_last) {
    if (layout.blocks.empty()) return window_last + 1 >= start + layout.min_gap[0] ? 0 : kBeyond;
    const std::vector<std::size_t>& first = suf.rows.front();
    for (std::size_t d = 0; d <= suf.delta; ++d)
        if (first[d] != 0 && first[d] >= start + layout.min_gap[0]) return d;
    return kBeyond;
}

/// min(cap + 1, distance of layout against w[window]).
inline std::size_t window_distance(const LcsIndex& idx, Interval window, const BlockLayout& layout,
                                   std::size_t cap) {
    if (window.length() < layout.minimum_length()) return cap + 1;
    const std::size_t delta = std::min(cap, window.length());
    const SufMatrix suf = suf_scan(idx, window, layout, delta, false);
    const std::size_t d = distance_from_row(suf, layout, window.first, window.last);
    return d == kBeyond ? cap + 1 : d;
}

/// For every start s in [window.first : window.last + 1], min(cap + 1,
/// distance of layout against w[s:window.last]); element k is start first+k.
inline std::vector<std::size_t> suffix_profile(const LcsIndex& idx, Interval window, const BlockLayout& layout,
                                               std::size_t cap) {
    const std::size_t count = window.length() + 1;
    std::vector<std::size_t> prof(count, cap + 1);
    const std::size_t g0 = layout.min_gap.front();
    if (layout.blocks.empty()) {
        for (std::size_t k = 0; k < count; ++k)
            if (count - 1 - k >= g0) prof[k] = 0;
        return prof;
    }
    const std::size_t delta = std::min(cap, window.length());
    const SufMatrix suf = suf_scan(idx, window, layout, delta, false);
    const std::vector<std::size_t>& first = suf.rows.front();
    // prof[s] = min d with first[d] >= s + g0; first[] is non-decreasing in d.
    std::size_t covered = window.first;  // next start not yet assigned
    for (std::size_t d = 0; d <= delta; ++d) {
        if (first[d] == 0 || first[d] < window.first + g0) continue;
        const std::size_t reach = first[d] - g0;
        for (; covered <= reach; ++covered) prof[covered - window.first] = d;
    }
    return prof;
}

/// Block start positions realizing `target` mismatches (target must be the
/// row-1 distance), recovered from a complete Suf matrix.
inline std::vector<std::size_t> block_starts(const LcsIndex& idx, const SufMatrix& suf, const BlockLayout& layout,
                                             std::size_t target) {
    std::vector<std::size_t> starts;
    std::size_t d = target;
    for (std::size_t r = 0; r < layout.blocks.size(); ++r) {
        const std::size_t g = suf.rows[r][d];
        if (g == 0) throw std::logic_error("inconsistent Suf matrix during witness recovery");
        const Interval b = layout.blocks[r];
        const std::size_t t = bounded_mismatch(idx, Interval{g, g + b.length() - 1}, b, suf.delta);
        starts.push_back(g);
        d -= t;
    }
    return starts;
}

/// Assigns each variable run the factor between consecutive blocks; the
/// first variable of a run takes the whole factor, the others are empty.
inline Substitution gap_substitution(WordView w, Interval window, const RegularPattern& rp,
                                     const std::vector<std::size_t>& starts) {
    Substitution h;
    std::size_t cursor = window.first;
    for (std::size_t r = 0; r < rp.gaps.size(); ++r) {
        const std::size_t end = r < starts.size() ? starts[r] - 1 : window.last;
        const std::vector<VarId>& run = rp.gaps[r];
        WordView piece = factor(w, cursor, end);
        h[run.front()] = Word(piece.begin(), piece.end());
        for (std::size_t k = 1; k < run.size(); ++k) h[run[k]] = Word{};
        if (r < starts.size()) cursor = starts[r] + rp.blocks[r].length();
    }
    return h;
}

}  // namespace detail

struct MismatchRegResult {
    bool accepted = false;
    Distance distance;  // exact d_HAM when accepted, Infinite otherwise
    SufMatrix suf;
    std::optional<Substitution> witness;
};

// ---------------------------------------------------------------------------
// Core-level operations (pattern already peeled)
// ---------------------------------------------------------------------------

/// Greedy exact matching: place each block at its last possible occurrence,
/// right to left. Returns a witness with h(alpha) = w or nullopt.
inline std::optional<Substitution> match_reg_exact(WordView w, const RegularPattern& rp) {
    const std::size_t n = w.size();
    if (n < rp.minimum_length()) return std::nullopt;
    const std::size_t R = rp.block_count();
    if (R == 0) return detail::gap_substitution(w, Interval{1, n}, rp, {});

    LcsIndex idx(w, rp.terminals);
    std::vector<std::size_t> starts(R, 0);
    std::ptrdiff_t end = static_cast<std::ptrdiff_t>(n) - static_cast<std::ptrdiff_t>(rp.min_gap[R]);
    for (std::size_t r = R; r-- > 0;) {
        const auto len = static_cast<std::ptrdiff_t>(rp.blocks[r].length());
        bool found = false;
        for (std::ptrdiff_t i = end; i >= len; --i) {
            const Interval span{static_cast<std::size_t>(i - len + 1), static_cast<std::size_t>(i)};
            if (bounded_mismatch(idx, span, rp.blocks[r], 0) == 0) {
                starts[r] = span.first;
                found = true;
                break;
            }
        }
        if (!found) return std::nullopt;
        end = static_cast<std::ptrdiff_t>(starts[r]) - 1 - static_cast<std::ptrdiff_t>(rp.min_gap[r]);
    }
    if (end < 0) return std::nullopt;
    return detail::gap_substitution(w, Interval{1, n}, rp, starts);
}

/// Quadratic DP baseline: T over (suffix of w, suffix of the token sequence).
inline Distance mismatch_reg_dp(WordView w, const RegularPattern& rp) {
    constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max() / 2;
    const std::size_t n = w.size();
    struct Token {
        bool gap;
        std::size_t min_len;
        Letter letter;
    };
    std::vector<Token> tokens;
    for (std::size_t r = 0; r < rp.gaps.size(); ++r) {
        tokens.push_back(Token{true, rp.min_gap[r], 0});
        if (r < rp.block_count())
            for (Letter a : rp.block(r)) tokens.push_back(Token{false, 0, a});
    }

    // next[a] = best alignment of tokens[j+1..] against w[a..n-1] (0-based).
    std::vector<std::size_t> next(n + 1, kInf), cur(n + 1, kInf), free_gap(n + 1, kInf);
    next[n] = 0;
    for (std::size_t j = tokens.size(); j-- > 0;) {
        const Token& tk = tokens[j];
        if (!tk.gap) {
            cur[n] = kInf;
            for (std::size_t a = n; a-- > 0;)
                cur[a] = next[a + 1] >= kInf ? kInf : next[a + 1] + (w[a] != tk.letter);
        } else {
            free_gap[n] = next[n];
            for (std::size_t a = n; a-- > 0;) free_gap[a] = std::min(next[a], free_gap[a + 1]);
            if (tk.min_len == 0) {
                cur = free_gap;
            } else {
                cur[n] = kInf;
                for (std::size_t a = n; a-- > 0;) cur[a] = free_gap[a + 1];
            }
        }
        next.swap(cur);
    }
    return next[0] >= kInf ? Distance::infinite() : Distance(next[0]);
}

/// Decision version with the Suf-matrix scan: accepted iff d_HAM <= delta.
inline MismatchRegResult mismatch_reg(WordView w, const RegularPattern& rp, std::size_t delta,
                                      const RegOptions& opts = {}) {
    MismatchRegResult out;
    const std::size_t n = w.size();
    delta = std::min(delta, n);
    if (n < rp.minimum_length()) {
        out.suf.delta = delta;
        return out;
    }
    const detail::BlockLayout layout = detail::BlockLayout::of(rp);
    LcsIndex idx(w, rp.terminals);
    const bool keep = opts.keep_matrix || opts.want_witness;
    out.suf = detail::suf_scan(idx, Interval{1, n}, layout, delta, keep, opts.trace ? &opts.trace : nullptr);
    const std::size_t d = detail::distance_from_row(out.suf, layout, 1, n);
    if (d == detail::kBeyond) return out;
    out.accepted = true;
    out.distance = d;
    if (opts.want_witness) {
        const auto starts = detail::block_starts(idx, out.suf, layout, d);
        out.witness = detail::gap_substitution(w, Interval{1, n}, rp, starts);
    }
    return out;
}

/// Minimization by budget doubling: delta = 0, 1, 2, 4, ... until accepted.
inline MatchResult min_mismatch_reg(WordView w, const RegularPattern& rp, const RegOptions& opts = {}) {
    MatchResult out;
    const std::size_t n = w.size();
    if (n < rp.minimum_length()) return out;
    const detail::BlockLayout layout = detail::BlockLayout::of(rp);
    LcsIndex idx(w, rp.terminals);
    const SufTrace* trace = opts.trace ? &opts.trace : nullptr;
    for (std::size_t delta = 0;; delta = delta == 0 ? 1 : 2 * delta) {
        const std::size_t budget = std::min(delta, n);
        const SufMatrix suf = detail::suf_scan(idx, Interval{1, n}, layout, budget, opts.want_witness, trace);
        const std::size_t d = detail::distance_from_row(suf, layout, 1, n);
        if (d != detail::kBeyond) {
            out.distance = d;
            if (opts.want_witness) {
                const auto starts = detail::block_starts(idx, suf, layout, d);
                out.witness = detail::gap_substitution(w, Interval{1, n}, rp, starts);
            }
            return out;
        }
        if (budget == n) return out;  // length-feasible instances never exceed n
    }
}

// ---------------------------------------------------------------------------
// Pattern-level wrappers: peel terminal affixes, solve the core.
// ---------------------------------------------------------------------------

namespace detail {

inline void require_regular(const Pattern& alpha) {
    for (const auto& [x, count] : alpha.occurrence_counts())
        if (count > 1) throw UnsupportedClass("pattern is not regular: " + alpha.name(x) + " repeats");
}

}  // namespace detail

inline std::optional<Substitution> match_reg_exact(WordView w, const Pattern& alpha, bool strict = false) {
    detail::require_regular(alpha);
    const PeeledInstance peeled = peel_affixes(alpha, w);
    if (!peeled.feasible || peeled.affix_mismatches != 0) return std::nullopt;
    if (peeled.core_pattern.empty()) return Substitution{};
    return match_reg_exact(peeled.core_word, RegularPattern::from_core(peeled.core_pattern, strict));
}

inline Distance mismatch_reg_dp(WordView w, const Pattern& alpha, bool strict = false) {
    detail::require_regular(alpha);
    const PeeledInstance peeled = peel_affixes(alpha, w);
    if (!peeled.feasible) return Distance::infinite();
    if (peeled.core_pattern.empty()) return peeled.affix_mismatches;
    return Distance(peeled.affix_mismatches) +
           mismatch_reg_dp(peeled.core_word, RegularPattern::from_core(peeled.core_pattern, strict));
}

inline MismatchRegResult mismatch_reg(WordView w, const Pattern& alpha, std::size_t delta,
                                      const RegOptions& opts = {}) {
    detail::require_regular(alpha);
    const PeeledInstance peeled = peel_affixes(alpha, w);
    MismatchRegResult out;
    if (!peeled.feasible || peeled.affix_mismatches > delta) return out;
    if (peeled.core_pattern.empty()) {
        out.accepted = true;
        out.distance = peeled.affix_mismatches;
        out.witness = Substitution{};
        return out;
    }
    out = mismatch_reg(peeled.core_word, RegularPattern::from_core(peeled.core_pattern, opts.strict),
                       delta - peeled.affix_mismatches, opts);
    if (out.accepted) out.distance = out.distance + Distance(peeled.affix_mismatches);
    return out;
}

inline MatchResult min_mismatch_reg(WordView w, const Pattern& alpha, const RegOptions& opts = {}) {
    detail::require_regular(alpha);
    const PeeledInstance peeled = peel_affixes(alpha, w);
    MatchResult out;
    if (!peeled.feasible) return out;
    if (peeled.core_pattern.empty()) {
        out.distance = peeled.affix_mismatches;
        return out;
    }
    out = min_mismatch_reg(peeled.core_word, RegularPattern::from_core(peeled.core_pattern, opts.strict), opts);
    out.distance = out.distance + Distance(peeled.affix_mismatches);
    return out;
}

}  // namespace varpat

#endif
