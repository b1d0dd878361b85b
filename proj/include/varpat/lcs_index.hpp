#ifndef VARPAT_LCS_INDEX_HPP
#define VARPAT_LCS_INDEX_HPP

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <numeric>
#include <vector>

#include "varpat/core.hpp"

namespace varpat {

namespace instrumentation {

/// Per-thread running total of LCS queries issued by every index. Callers
/// reset it before a measured region and read it afterwards.
inline thread_local std::uint64_t lcs_queries = 0;

inline void reset_lcs_queries() noexcept { lcs_queries = 0; }
inline std::uint64_t lcs_query_total() noexcept { return lcs_queries; }

}  // namespace instrumentation

namespace detail {

/// Suffix array of s by prefix doubling over cyclic shifts. s must end with a
/// unique minimal terminator (value 0).
inline std::vector<std::int32_t> suffix_array(const std::vector<std::uint32_t>& s, std::uint32_t alphabet) {
    const std::size_t n = s.size();
    std::vector<std::int32_t> p(n), c(n), pn(n), cn(n);
    std::vector<std::int32_t> cnt(std::max<std::size_t>(alphabet, n) + 1, 0);

    for (std::size_t i = 0; i < n; ++i) ++cnt[s[i]];
    for (std::size_t i = 1; i < cnt.size(); ++i) cnt[i] += cnt[i - 1];
    for (std::size_t i = n; i-- > 0;) p[static_cast<std::size_t>(--cnt[s[i]])] = static_cast<std::int32_t>(i);
    c[static_cast<std::size_t>(p[0])] = 0;
    std::int32_t classes = 1;
    for (std::size_t i = 1; i < n; ++i) {
        if (s[static_cast<std::size_t>(p[i])] != s[static_cast<std::size_t>(p[i - 1])]) ++classes;
        c[static_cast<std::size_t>(p[i])] = classes - 1;
    }

    for (std::size_t h = 1; h < n && static_cast<std::size_t>(classes) < n; h <<= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            std::int64_t v = static_cast<std::int64_t>(p[i]) - static_cast<std::int64_t>(h);
            if (v < 0) v += static_cast<std::int64_t>(n);
            pn[i] = static_cast<std::int32_t>(v);
        }
        std::fill(cnt.begin(), cnt.begin() + classes, 0);
        for (std::size_t i = 0; i < n; ++i) ++cnt[static_cast<std::size_t>(c[static_cast<std::size_t>(pn[i])])];
        for (std::int32_t i = 1; i < classes; ++i) cnt[static_cast<std::size_t>(i)] += cnt[static_cast<std::size_t>(i - 1)];
        for (std::size_t i = n; i-- > 0;)
            p[static_cast<std::size_t>(--cnt[static_cast<std::size_t>(c[static_cast<std::size_t>(pn[i])])])] = pn[i];
        cn[static_cast<std::size_t>(p[0])] = 0;
        classes = 1;
        for (std::size_t i = 1; i < n; ++i) {
            const std::size_t a = static_cast<std::size_t>(p[i]);
            const std::size_t b = static_cast<std::size_t>(p[i - 1]);
            const std::size_t a2 = (a + h) % n;
            const std::size_t b2 = (b + h) % n;
            if (c[a] != c[b] || c[a2] != c[b2]) ++classes;
            cn[a] = classes - 1;
        }
        c.swap(cn);
    }
    return p;
}

}  // namespace detail

/// Longest-common-suffix index over a word w (length n) and a second word u
/// (length m): lcs(i, j) is the length of the longest common suffix of the
/// prefixes w[1:i] and u[1:j]. Backed by a suffix array, LCP array and sparse
/// table over the reversal of w#u, giving O(1) queries.
class LcsIndex {
public:
    LcsIndex(WordView w, WordView u) : n_(w.size()), m_(u.size()) {
        // reversed text: rev(u) 1 rev(w) 0, letters shifted by 2.
        const std::size_t total = n_ + m_ + 2;
        std::vector<std::uint32_t> text;
        text.reserve(total);
        for (std::size_t j = m_; j-- > 0;) text.push_back(u[j]);
        text.push_back(0);
        for (std::size_t i = n_; i-- > 0;) text.push_back(w[i]);

        // Compress letters to a dense range starting at 2 (1 = separator, 0 = end).
        std::vector<std::uint32_t> sorted(text.begin(), text.end());
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<std::uint32_t> s(total);
        for (std::size_t i = 0; i + 1 < total; ++i) {
            const auto it = std::lower_bound(sorted.begin(), sorted.end(), text[i]);
            s[i] = static_cast<std::uint32_t>(it - sorted.begin()) + 1;
        }
        s[total - 1] = 0;
        const auto alphabet = static_cast<std::uint32_t>(sorted.size() + 1);

        // position of the (reversed) suffix standing for prefix w[1:i] is N-i
        // where N = total - 1 (terminator excluded).
        text_length_ = total - 1;
        std::vector<std::int32_t> sa = detail::suffix_array(s, alphabet);
        rank_.assign(total, 0);
        for (std::size_t r = 0; r < total; ++r) rank_[static_cast<std::size_t>(sa[r])] = static_cast<std::int32_t>(r);

        // Kasai LCP: lcp[r] = LCP(sa[r-1], sa[r]).
        std::vector<std::int32_t> lcp(total, 0);
        std::size_t h = 0;
        for (std::size_t i = 0; i < total; ++i) {
            const auto r = static_cast<std::size_t>(rank_[i]);
            if (r == 0) {
                h = 0;
                continue;
            }
            const auto j = static_cast<std::size_t>(sa[r - 1]);
            while (i + h < total && j + h < total && s[i + h] == s[j + h]) ++h;
            lcp[r] = static_cast<std::int32_t>(h);
            if (h > 0) --h;
        }

        const std::size_t levels = static_cast<std::size_t>(std::bit_width(total));
        table_.resize(levels);
        table_[0] = std::move(lcp);
        for (std::size_t k = 1; k < levels; ++k) {
            const std::size_t span = std::size_t{1} << k;
            const std::size_t half = span >> 1;
            auto& cur = table_[k];
            const auto& prev = table_[k - 1];
            cur.resize(total - span + 1);
            for (std::size_t i = 0; i + span <= total; ++i) cur[i] = std::min(prev[i], prev[i + half]);
        }
    }

    LcsIndex(const LcsIndex& other)
        : n_(other.n_), m_(other.m_), text_length_(other.text_length_), rank_(other.rank_),
          table_(other.table_), queries_(other.query_count()) {}
    LcsIndex& operator=(const LcsIndex&) = delete;

    std::size_t word_length() const noexcept { return n_; }
    std::size_t other_length() const noexcept { return m_; }

    /// Longest common suffix of w[1:i] and u[1:j]; 0 when either is empty.
    std::size_t lcs(std::size_t i, std::size_t j) const noexcept {
        // Single-writer counter: exact in single-threaded use, never UB.
        queries_.store(queries_.load(std::memory_order_relaxed) + 1, std::memory_order_relaxed);
        ++instrumentation::lcs_queries;
        if (i == 0 || j == 0) return 0;
        const std::size_t pw = text_length_ - i;
        const std::size_t pu = text_length_ - (n_ + 1 + j);
        std::size_t a = static_cast<std::size_t>(rank_[pw]);
        std::size_t b = static_cast<std::size_t>(rank_[pu]);
        if (a > b) std::swap(a, b);
        const std::size_t lo = a + 1;
        const std::size_t k = static_cast<std::size_t>(std::bit_width(b - lo + 1)) - 1;
        const std::size_t v = static_cast<std::size_t>(
            std::min(table_[k][lo], table_[k][b + 1 - (std::size_t{1} << k)]));
        return std::min({v, i, j});
    }

    std::uint64_t query_count() const noexcept { return queries_.load(std::memory_order_relaxed); }
    void reset_query_count() const noexcept { queries_.store(0, std::memory_order_relaxed); }

private:
    std::size_t n_;
    std::size_t m_;
    std::size_t text_length_ = 0;
    std::vector<std::int32_t> rank_;
    std::vector<std::vector<std::int32_t>> table_;
    mutable std::atomic<std::uint64_t> queries_{0};
};

/// min(delta + 1, d_HAM(w[span_w], u[span_u])) by jumping from mismatch to
/// mismatch right to left; issues at most delta + 1 lcs queries.
inline std::size_t bounded_mismatch(const LcsIndex& idx, Interval span_w, Interval span_u, std::size_t delta) {
    if (span_w.length() != span_u.length())
        throw SpanLengthMismatch("bounded_mismatch on spans of lengths " + std::to_string(span_w.length()) +
                                 " and " + std::to_string(span_u.length()));
    if (span_w.last > idx.word_length() || span_u.last > idx.other_length() ||
        (!span_w.empty() && span_w.first == 0) || (!span_u.empty() && span_u.first == 0))
        throw std::out_of_range("bounded_mismatch span outside indexed words");

    std::size_t a = span_w.last;
    std::size_t b = span_u.last;
    std::size_t remaining = span_w.length();
    std::size_t d = 0;
    while (remaining > 0 && d <= delta) {
        const std::size_t h = std::min(idx.lcs(a, b), remaining);
        if (h == remaining) break;
        ++d;
        a -= h + 1;
        b -= h + 1;
        remaining -= h + 1;
    }
    return std::min(d, delta + 1);
}

/// D[i] = min(delta + 1, d_HAM(w[i-m+1:i], u)) for window ends i in [m:n];
/// element k of the result is D[m + k].
inline std::vector<std::size_t> sliding_mismatch_array(const LcsIndex& idx, Interval window, Interval span_u,
                                                       std::size_t delta) {
    const std::size_t m = span_u.length();
    if (m > window.length())
        throw PatternLongerThanWord("sliding_mismatch_array: pattern of length " + std::to_string(m) +
                                    " exceeds window of length " + std::to_string(window.length()));
    std::vector<std::size_t> out;
    out.reserve(window.length() - m + 1);
    for (std::size_t i = window.first + m - 1; i <= window.last; ++i)
        out.push_back(bounded_mismatch(idx, Interval{i + 1 - m, i}, span_u, delta));
    return out;
}

inline std::vector<std::size_t> sliding_mismatch_array(WordView w, WordView u, std::size_t delta) {
    if (u.size() > w.size())
        throw PatternLongerThanWord("sliding_mismatch_array: |u| = " + std::to_string(u.size()) +
                                    " > |w| = " + std::to_string(w.size()));
    LcsIndex idx(w, u);
    return sliding_mismatch_array(idx, Interval{1, w.size()}, Interval{1, u.size()}, delta);
}

}  // namespace varpat

#endif
