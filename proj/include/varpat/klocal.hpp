#ifndef VARPAT_KLOCAL_HPP
#define VARPAT_KLOCAL_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "varpat/classify.hpp"
#include "varpat/core.hpp"
#include "varpat/oracle.hpp"
#include "varpat/unary.hpp"

namespace varpat {

struct KLocalOptions {
    /// Upper limit on the estimated tuple space; BudgetExceeded beyond it.
    std::uint64_t budget = 100'000'000;
};

namespace detail {

struct KeyHash {
    std::size_t operator()(const std::vector<std::uint32_t>& key) const noexcept {
        std::uint64_t h = 1469598103934665603ULL;
        for (std::uint32_t v : key) {
            h ^= v;
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

/// Maximal factors of alpha over marked variables and terminals that contain
/// at least one marked variable, as half-open symbol ranges.
inline std::vector<std::pair<std::size_t, std::size_t>> marked_factors(const Pattern& alpha,
                                                                       const std::vector<bool>& marked) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const std::size_t m = alpha.size();
    std::size_t i = 0;
    while (i < m) {
        if (!(alpha[i].is_variable() && marked[alpha[i].var().value])) {
            ++i;
            continue;
        }
        std::size_t lo = i;
        const std::size_t floor = out.empty() ? 0 : out.back().second;
        while (lo > floor && alpha[lo - 1].is_terminal()) --lo;
        std::size_t hi = i;
        while (hi < m && !(alpha[hi].is_variable() && !marked[alpha[hi].var().value])) ++hi;
        out.emplace_back(lo, hi);
        i = hi;
    }
    return out;
}

/// A stretch of a new factor made of the new variable and terminals.
struct Segment {
    std::size_t begin = 0, end = 0;  // symbol range
    std::size_t terminals = 0, occurrences = 0;
    std::size_t length(std::size_t len) const { return terminals + occurrences * len; }
};

struct NewFactor {
    std::size_t begin = 0, end = 0;
    std::size_t first_old = 0, old_count = 0;  // contained old factors
    std::vector<Segment> segments;            // old_count + 1 stretches (standalone: one)
    std::size_t min_before = 0;               // terminals between the previous factor and this one
    bool pinned_start = false;
    bool pinned_end = false;
};

struct Step {
    VarId var;
    std::vector<NewFactor> factors;
};

struct Entry {
    std::uint64_t cost;
    std::uint32_t parent;
    Word image;
};

inline Segment make_segment(const Pattern& alpha, std::size_t b, std::size_t e) {
    Segment s{b, e, 0, 0};
    for (std::size_t i = b; i < e; ++i) {
        if (alpha[i].is_terminal())
            ++s.terminals;
        else
            ++s.occurrences;
    }
    return s;
}

}  // namespace detail

/// d_HAM(alpha, w) by the marking-sequence DP: after each step the table maps
/// the w-intervals of the marked factors to their joint optimum.
inline MatchResult min_mismatch_klocal(WordView w, const Pattern& alpha, const MarkingSequence& seq,
                                       const KLocalOptions& opts = {}) {
    const std::size_t width = marking_width(alpha, seq.order);
    if (width > seq.k)
        throw InvalidWitness("marking sequence reaches " + std::to_string(width) + " blocks, above k = " +
                             std::to_string(seq.k));
    const std::size_t n = w.size();
    const std::size_t m = alpha.size();
    MatchResult out;
    if (seq.order.empty()) {
        if (m == n) out.distance = substitution_distance(alpha, {}, w);
        return out;
    }
    if (alpha.terminal_count() > n) return out;

    // Plan the steps.
    std::uint32_t max_id = 0;
    for (const Symbol& s : alpha)
        if (s.is_variable()) max_id = std::max(max_id, s.var().value);
    std::vector<bool> marked(max_id + 1, false);
    std::vector<std::pair<std::size_t, std::size_t>> old;
    std::vector<detail::Step> steps;
    std::uint64_t estimate = 0;
    for (VarId x : seq.order) {
        marked[x.value] = true;
        const auto now = detail::marked_factors(alpha, marked);
        detail::Step step{x, {}};
        std::size_t o = 0;
        std::size_t prev_end = 0;
        for (const auto& [b, e] : now) {
            detail::NewFactor f;
            f.begin = b;
            f.end = e;
            f.first_old = o;
            std::size_t cursor = b;
            while (o < old.size() && old[o].first >= b && old[o].second <= e) {
                f.segments.push_back(detail::make_segment(alpha, cursor, old[o].first));
                cursor = old[o].second;
                ++o;
                ++f.old_count;
            }
            f.segments.push_back(detail::make_segment(alpha, cursor, e));
            for (std::size_t i = prev_end; i < b; ++i) f.min_before += alpha[i].is_terminal();
            f.pinned_start = b == 0;
            f.pinned_end = e == m;
            prev_end = e;
            step.factors.push_back(std::move(f));
        }
        std::uint64_t states = 1;
        for (std::size_t g = 0; g < 2 * now.size(); ++g) states = detail::saturating_mul(states, n + 2);
        estimate = detail::saturating_add(estimate, states);
        steps.push_back(std::move(step));
        old = now;
    }
    if (estimate > opts.budget) throw BudgetExceeded("k-local tuple space", estimate, opts.budget);

    using Key = std::vector<std::uint32_t>;
    std::vector<std::vector<detail::Entry>> tables(steps.size());
    std::vector<std::vector<Key>> keys(steps.size());
    std::unordered_map<Key, std::uint32_t, detail::KeyHash> index;
    detail::ColumnCounter counter;

    // Previous table (step h); the empty tuple before the first step.
    std::vector<Key> prev_keys{Key{}};
    std::vector<std::uint64_t> prev_cost{0};

    for (std::size_t h = 0; h < steps.size(); ++h) {
        const detail::Step& step = steps[h];
        const std::size_t F = step.factors.size();
        const std::size_t occ_total = [&] {
            std::size_t c = 0;
            for (const auto& f : step.factors)
                for (const auto& s : f.segments) c += s.occurrences;
            return c;
        }();
        index.clear();
        auto& table = tables[h];
        auto& tkeys = keys[h];
        const std::size_t max_len = occ_total == 0 ? 0 : n;

        Key key(2 * F, 0);
        std::vector<std::size_t> starts;  // 0-based window starts of the new variable
        for (std::uint32_t pi = 0; pi < prev_keys.size(); ++pi) {
            const Key& pk = prev_keys[pi];
            for (std::size_t len = 0; len <= max_len; ++len) {
                std::uint64_t fixed = prev_cost[pi];
                starts.clear();
                // Place segment s at w-position pos (1-based); charges terminals.
                auto place = [&](const detail::Segment& s, std::size_t pos, std::uint64_t& cost) {
                    for (std::size_t i = s.begin; i < s.end; ++i) {
                        if (alpha[i].is_terminal()) {
                            cost += (alpha[i].letter() != w[pos - 1]);
                            ++pos;
                        } else {
                            starts.push_back(pos - 1);
                            pos += len;
                        }
                    }
                };
                auto rec = [&](auto&& self, std::size_t r, std::size_t prev_last, std::uint64_t cost) -> void {
                    if (r == F) {
                        const std::uint64_t total = cost + median_of_windows(w, starts, len, counter, nullptr);
                        auto [it, fresh] = index.try_emplace(key, static_cast<std::uint32_t>(table.size()));
                        if (fresh) {
                            table.push_back(detail::Entry{total, pi, {}});
                            tkeys.push_back(key);
                        } else if (total >= table[it->second].cost) {
                            return;
                        } else {
                            table[it->second].cost = total;
                            table[it->second].parent = pi;
                        }
                        Word image;
                        median_of_windows(w, starts, len, counter, &image);
                        table[it->second].image = std::move(image);
                        return;
                    }
                    const detail::NewFactor& f = step.factors[r];
                    const std::size_t mark = starts.size();
                    std::size_t lo_start, hi_start;
                    if (f.old_count > 0) {
                        const std::size_t a = f.first_old;
                        const std::size_t first_old = pk[2 * a];
                        const std::size_t lead = f.segments.front().length(len);
                        if (first_old < lead + 1) return;
                        lo_start = hi_start = first_old - lead;
                    } else {
                        lo_start = prev_last + 1 + f.min_before;
                        hi_start = n + 1;
                    }
                    if (f.pinned_start) {
                        if (lo_start > 1) return;
                        lo_start = hi_start = 1;
                    }
                    lo_start = std::max(lo_start, prev_last + 1 + f.min_before);
                    for (std::size_t st = lo_start; st <= hi_start; ++st) {
                        std::uint64_t c = cost;
                        std::size_t pos = st;
                        bool ok = true, overflow = false;
                        for (std::size_t sgi = 0; sgi < f.segments.size() && ok; ++sgi) {
                            const detail::Segment& sg = f.segments[sgi];
                            if (pos + sg.length(len) > n + 1) {
                                ok = false;
                                overflow = true;
                                break;
                            }
                            place(sg, pos, c);
                            pos += sg.length(len);
                            if (sgi + 1 < f.segments.size()) {
                                const std::size_t o = f.first_old + sgi;
                                if (pk[2 * o] != pos) ok = false;
                                pos = pk[2 * o + 1] + 1;
                            }
                        }
                        const std::size_t last = pos - 1;
                        if (ok && f.pinned_end && last != n) ok = false;
                        if (ok) {
                            key[2 * r] = static_cast<std::uint32_t>(st);
                            key[2 * r + 1] = static_cast<std::uint32_t>(last);
                            self(self, r + 1, last, c);
                        }
                        starts.resize(mark);
                        if (overflow && f.old_count == 0) break;
                    }
                };
                rec(rec, 0, 0, fixed);
            }
        }
        prev_keys = tkeys;
        prev_cost.assign(table.size(), 0);
        for (std::size_t i = 0; i < table.size(); ++i) prev_cost[i] = table[i].cost;
    }

    // Final table: a single factor covering alpha aligned to [1:n].
    const Key goal{1, static_cast<std::uint32_t>(n)};
    const auto& final_keys = keys.back();
    for (std::uint32_t i = 0; i < final_keys.size(); ++i) {
        if (final_keys[i] != goal) continue;
        out.distance = tables.back()[i].cost;
        std::uint32_t at = i;
        for (std::size_t h = steps.size(); h-- > 0;) {
            out.witness[steps[h].var] = tables[h][at].image;
            at = tables[h][at].parent;
        }
        break;
    }
    return out;
}

}  // namespace varpat

#endif
