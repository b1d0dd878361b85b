#ifndef VARPAT_HARDNESS_HPP
#define VARPAT_HARDNESS_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "varpat/core.hpp"
#include "varpat/io.hpp"
#include "varpat/oracle.hpp"

namespace varpat {

struct OvInstance {
    std::vector<std::vector<std::uint8_t>> U;
    std::vector<std::vector<std::uint8_t>> V;

    std::size_t n() const noexcept { return U.size(); }
    std::size_t d() const noexcept { return U.empty() ? 0 : U.front().size(); }
};

struct CpInstance {
    std::vector<Word> strings;  // k strings over [1:sigma], common length
    std::size_t m = 1;
    std::uint64_t delta = 0;
    Letter sigma = 2;

    std::size_t k() const noexcept { return strings.size(); }
    std::size_t length() const noexcept { return strings.empty() ? 0 : strings.front().size(); }
};

// OV letters, in header order.
namespace ov_letter {
inline constexpr Letter zero = 1, one = 2, a = 3, b = 4, hash = 5, dollar = 6;
}

namespace detail {

inline void append(Word& w, std::initializer_list<Letter> letters) { w.insert(w.end(), letters); }

inline void append_run(Word& w, Letter a, std::size_t count) { w.insert(w.end(), count, a); }

inline void validate_ov(const OvInstance& inst) {
    if (inst.U.empty() || inst.U.size() != inst.V.size()) throw std::invalid_argument("OV sets must be non-empty and of equal size");
    const std::size_t d = inst.d();
    if (d == 0) throw std::invalid_argument("OV dimension must be at least 1");
    for (const auto* set : {&inst.U, &inst.V})
        for (const auto& v : *set) {
            if (v.size() != d) throw std::invalid_argument("OV vectors must share one dimension");
            for (std::uint8_t bit : v)
                if (bit > 1) throw std::invalid_argument("OV entries must be 0 or 1");
        }
}

}  // namespace detail

/// u_i, v_j with sum_k u_i[k] v_j[k] = 0 for some pair.
inline bool solve_ov_naive(const OvInstance& inst) {
    for (const auto& u : inst.U)
        for (const auto& v : inst.V) {
            bool orthogonal = true;
            for (std::size_t k = 0; k < u.size() && orthogonal; ++k) orthogonal = !(u[k] && v[k]);
            if (orthogonal) return true;
        }
    return false;
}

/// Gadget A(i) = bba A'(i_1)###...A'(i_d) bbb X with X = (X'###)^{d-1} X'.
inline Word ov_gadget_a(const std::vector<std::uint8_t>& u) {
    using namespace ov_letter;
    Word g;
    detail::append(g, {b, b, a});
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (k > 0) detail::append(g, {hash, hash, hash});
        if (u[k])
            detail::append(g, {one, zero, zero});
        else
            detail::append(g, {zero, zero, one});
    }
    detail::append(g, {b, b, b});
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (k > 0) detail::append(g, {hash, hash, hash});
        detail::append(g, {zero, one, zero});
    }
    return g;
}

/// Terminals of B(j) between x_j and y_j: bba B'(j_1)###...B'(j_d).
inline Word ov_gadget_b(const std::vector<std::uint8_t>& v) {
    using namespace ov_letter;
    Word g;
    detail::append(g, {b, b, a});
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k > 0) detail::append(g, {hash, hash, hash});
        if (v[k])
            detail::append(g, {zero, one, one});
        else
            detail::append(g, {zero, zero, zero});
    }
    return g;
}

/// Regular instance with distance <= n(d+1)-1 iff an orthogonal pair exists,
/// and exactly n(d+1) otherwise.
inline Instance ov_to_reg(const OvInstance& inst) {
    using namespace ov_letter;
    detail::validate_ov(inst);
    const std::size_t n = inst.n();
    const std::size_t d = inst.d();
    const std::size_t M = 12 * d;

    Instance out;
    out.alphabet.names = {"0", "1", "a", "b", "#", "$"};
    detail::append_run(out.word, dollar, M);
    for (int round = 0; round < 2; ++round)
        for (std::size_t i = 0; i < n; ++i) {
            const Word g = ov_gadget_a(inst.U[i]);
            out.word.insert(out.word.end(), g.begin(), g.end());
            detail::append_run(out.word, dollar, M);
        }

    PatternBuilder pb;
    pb.var("x");
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t r = 0; r < M; ++r) pb.terminal(dollar);
        pb.var("x" + std::to_string(j + 1));
        pb.terminals(ov_gadget_b(inst.V[j]));
        pb.var("y" + std::to_string(j + 1));
    }
    for (std::size_t r = 0; r < M; ++r) pb.terminal(dollar);
    pb.var("y");
    out.pattern = pb.build();
    out.delta = n * (d + 1) - 1;
    return out;
}

/// 1RepVar instance whose optimum is the CP optimum plus m. Letters:
/// the CP alphabet, then a, b, c, d, $.
inline Instance cp_to_1repvar(const CpInstance& inst) {
    const std::size_t k = inst.k();
    const std::size_t len = inst.length();
    if (k == 0 || len == 0) throw std::invalid_argument("CP instance needs at least one non-empty string");
    if (inst.m == 0 || inst.m > len) throw std::invalid_argument("CP target length must lie in [1:len]");
    for (const Word& s : inst.strings) {
        if (s.size() != len) throw std::invalid_argument("CP strings must share one length");
        for (Letter c : s)
            if (c < 1 || c > inst.sigma) throw std::invalid_argument("CP letter outside [1:sigma]");
    }
    const Letter a = inst.sigma + 1, b = inst.sigma + 2, c = inst.sigma + 3, d = inst.sigma + 4,
                 dollar = inst.sigma + 5;
    const std::size_t M = (k * len) * (k * len);

    Word ab, cd;
    for (std::size_t r = 0; r < M; ++r) {
        detail::append_run(ab, a, M);
        detail::append_run(ab, b, M);
        detail::append_run(cd, c, M);
        detail::append_run(cd, d, M);
    }

    Instance out;
    for (Letter x = 1; x <= inst.sigma; ++x) out.alphabet.names.push_back(std::to_string(x));
    for (const char* name : {"a", "b", "c", "d", "$"}) out.alphabet.names.emplace_back(name);

    PatternBuilder pb;
    for (std::size_t i = 0; i < k; ++i) {
        out.word.insert(out.word.end(), inst.strings[i].begin(), inst.strings[i].end());
        out.word.insert(out.word.end(), ab.begin(), ab.end());
        pb.var("y" + std::to_string(i + 1)).var("x").var("z" + std::to_string(i + 1)).terminals(ab);
    }
    out.word.insert(out.word.end(), cd.begin(), cd.end());
    detail::append_run(out.word, dollar, inst.m);
    pb.terminals(cd).var("x");
    out.pattern = pb.build();
    out.delta = inst.delta + inst.m;
    return out;
}

/// Smallest total distance of a length-m center to one length-m factor per
/// string. Refuses instances with sigma^m (len-m+1)^k above `budget`.
inline std::uint64_t solve_cp_naive(const CpInstance& inst, std::uint64_t budget = 10'000'000) {
    const std::size_t k = inst.k();
    const std::size_t len = inst.length();
    const std::size_t m = inst.m;
    if (m == 0 || m > len) throw std::invalid_argument("CP target length must lie in [1:len]");
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < m; ++i) size = detail::saturating_mul(size, inst.sigma);
    for (std::size_t i = 0; i < k; ++i) size = detail::saturating_mul(size, len - m + 1);
    if (size > budget) throw BudgetExceeded("consensus-pattern enumeration", size, budget);

    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    Word center(m, 1);
    while (true) {
        std::uint64_t total = 0;
        for (const Word& s : inst.strings) {
            std::uint64_t row = std::numeric_limits<std::uint64_t>::max();
            for (std::size_t p = 0; p + m <= len; ++p)
                row = std::min<std::uint64_t>(row, hamming_distance(WordView(s).subspan(p, m), center));
            total += row;
        }
        best = std::min(best, total);
        std::size_t i = 0;
        while (i < m && ++center[i] > inst.sigma) center[i++] = 1;
        if (i == m) break;
    }
    return best;
}

// ---------------------------------------------------------------------------
// Seeded samplers
// ---------------------------------------------------------------------------

/// Vectors with independent entries (1 with probability `density`); with
/// `planted`, one random pair is made orthogonal.
inline OvInstance random_ov(std::mt19937_64& rng, std::size_t n, std::size_t d, double density = 0.5,
                            bool planted = false) {
    std::bernoulli_distribution bit(density);
    OvInstance inst;
    inst.U.assign(n, std::vector<std::uint8_t>(d));
    inst.V.assign(n, std::vector<std::uint8_t>(d));
    for (auto* set : {&inst.U, &inst.V})
        for (auto& v : *set)
            for (auto& e : v) e = bit(rng) ? 1 : 0;
    if (planted && n > 0) {
        const std::size_t i = rng() % n, j = rng() % n;
        for (std::size_t k = 0; k < d; ++k)
            if (inst.U[i][k]) inst.V[j][k] = 0;
    }
    return inst;
}

inline CpInstance random_cp(std::mt19937_64& rng, std::size_t k, std::size_t len, std::size_t m, Letter sigma = 2) {
    std::uniform_int_distribution<Letter> letter(1, sigma);
    CpInstance inst;
    inst.m = m;
    inst.sigma = sigma;
    inst.strings.assign(k, Word(len));
    for (Word& s : inst.strings)
        for (Letter& c : s) c = letter(rng);
    return inst;
}

}  // namespace varpat

#endif
