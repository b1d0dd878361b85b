#ifndef VARPAT_TOOLS_CLI_HPP
#define VARPAT_TOOLS_CLI_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "varpat/varpat.hpp"

#if defined(__unix__) || defined(__APPLE__)
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>
#define VARPAT_CLI_FORK 1
#endif

namespace varpat::cli {

namespace exit_code {
inline constexpr int solved = 0;
inline constexpr int rejected = 1;
inline constexpr int parse = 2;
inline constexpr int unsupported = 3;
inline constexpr int budget = 4;
inline constexpr int verification = 5;
}  // namespace exit_code

enum class Algo { automatic, exact_reg, dp_reg, fast_reg, one_var, noncross, onerep, approx2, ptas, klocal, oracle };

inline const std::vector<std::pair<std::string, Algo>>& algo_names() {
    static const std::vector<std::pair<std::string, Algo>> names = {
        {"auto", Algo::automatic}, {"exact-reg", Algo::exact_reg}, {"dp-reg", Algo::dp_reg},
        {"fast-reg", Algo::fast_reg}, {"1var", Algo::one_var},     {"noncross", Algo::noncross},
        {"1rep", Algo::onerep},      {"approx2", Algo::approx2},   {"ptas", Algo::ptas},
        {"klocal", Algo::klocal},    {"oracle", Algo::oracle},
    };
    return names;
}

inline Algo parse_algo(const std::string& s) {
    for (const auto& [name, a] : algo_names())
        if (name == s) return a;
    // `exact` is the 1RepVar solver's name in the approximation family.
    if (s == "exact") return Algo::onerep;
    throw std::invalid_argument("unknown algorithm: " + s);
}

inline std::string algo_name(Algo a) {
    for (const auto& [name, b] : algo_names())
        if (a == b) return name;
    return "?";
}

struct SolveOptions {
    Algo algo = Algo::automatic;
    std::optional<std::uint64_t> delta;
    std::size_t r = 3;
    bool union_approx2 = true;
    std::optional<std::size_t> k;
    std::size_t max_k = 3;
    std::optional<std::uint64_t> budget;
    bool strict = false;
    std::ostream* trace = nullptr;
};

struct RunReport {
    std::string pattern_class;
    std::string algo;
    /// False for the approximation algorithms: distance is an upper bound.
    bool exact = true;
    /// Unknown after a rejected decision run of the Suf scan.
    std::optional<Distance> distance;
    std::optional<std::uint64_t> delta;
    bool accepted = true;
    std::optional<Substitution> witness;
    bool verified = true;
    std::uint64_t lcs_queries = 0;
    double wall_ms = 0;
    std::uint64_t digest = 0;
    std::size_t n = 0;
    std::size_t m = 0;
    std::string locality;

    int exit_status() const {
        if (!verified) return exit_code::verification;
        return accepted ? exit_code::solved : exit_code::rejected;
    }
};

namespace detail {

inline std::string trace_kind(SufTraceEvent::Kind k) {
    switch (k) {
    case SufTraceEvent::Kind::push: return "push";
    case SufTraceEvent::Kind::pop: return "pop";
    case SufTraceEvent::Kind::query: return "query";
    }
    return "?";
}

inline RegOptions reg_options(const SolveOptions& opts) {
    RegOptions ro;
    ro.strict = opts.strict;
    ro.want_witness = true;
    if (opts.trace) {
        std::ostream* out = opts.trace;
        ro.trace = [out](const SufTraceEvent& e) {
            *out << trace_kind(e.kind) << " row=" << e.row << " i=" << e.position << " d=[" << e.d_low << ":"
                 << e.d_high << "] t=" << e.t << '\n';
        };
    }
    return ro;
}

/// Smallest k <= max_k with a marking sequence, if any.
inline std::optional<MarkingSequence> smallest_marking(const Pattern& alpha, const PatternClass& cls,
                                                       std::size_t max_k) {
    if (cls.locality_exact) {
        if (cls.locality <= max_k) return cls.marking;
        return std::nullopt;
    }
    for (std::size_t k = 1; k <= max_k; ++k) {
        try {
            if (auto seq = find_marking_sequence(alpha, k)) return seq;
        } catch (const BudgetExceeded&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

inline Algo dispatch(const PatternClass& cls, bool have_marking) {
    if (cls.is_unary) return Algo::one_var;
    if (cls.is_regular) return Algo::fast_reg;
    if (cls.is_noncross) return Algo::noncross;
    if (cls.is_one_rep_var) return Algo::onerep;
    if (have_marking) return Algo::klocal;
    return Algo::oracle;
}

inline void set_result(RunReport& rep, const MatchResult& r) {
    rep.distance = r.distance;
    if (r.distance.is_finite()) rep.witness = r.witness;
}

}  // namespace detail

inline std::optional<std::uint64_t> budget_from_env() {
    const char* env = std::getenv("VARPAT_BUDGET");
    if (!env || !*env) return std::nullopt;
    try {
        std::size_t used = 0;
        const std::uint64_t v = std::stoull(env, &used);
        if (used == std::string(env).size()) return v;
    } catch (const std::logic_error&) {
    }
    throw std::invalid_argument(std::string("VARPAT_BUDGET is not a number: ") + env);
}

/// Classifies, dispatches, solves and re-verifies one instance.
inline RunReport solve(const Instance& inst, const SolveOptions& opts) {
    const Pattern& alpha = inst.pattern;
    const Word& w = inst.word;
    RunReport rep;
    rep.n = w.size();
    rep.m = alpha.size();
    rep.digest = instance_digest(inst);
    rep.delta = opts.delta ? opts.delta : inst.delta;

    const PatternClass cls = classify(alpha);
    rep.pattern_class = cls.label();
    rep.locality = std::to_string(cls.locality) + (cls.locality_exact ? "" : "?");

    std::optional<MarkingSequence> marking;
    Algo algo = opts.algo;
    if (algo == Algo::klocal) {
        if (opts.k) {
            marking = find_marking_sequence(alpha, *opts.k);
            if (!marking)
                throw UnsupportedClass("pattern is not " + std::to_string(*opts.k) + "-local");
        } else {
            marking = detail::smallest_marking(alpha, cls, opts.max_k);
            if (!marking)
                throw UnsupportedClass("pattern is not k-local for k <= " + std::to_string(opts.max_k));
        }
    } else if (algo == Algo::automatic) {
        if (!cls.is_one_rep_var && !cls.is_noncross) marking = detail::smallest_marking(alpha, cls, opts.max_k);
        algo = detail::dispatch(cls, marking.has_value());
    }
    rep.algo = algo_name(algo);

    OracleOptions oracle_opts;
    KLocalOptions klocal_opts;
    if (opts.budget) oracle_opts.budget = klocal_opts.budget = *opts.budget;

    instrumentation::reset_lcs_queries();
    const auto t0 = std::chrono::steady_clock::now();
    switch (algo) {
    case Algo::exact_reg: {
        auto h = match_reg_exact(w, alpha, opts.strict);
        rep.delta = 0;
        if (h) {
            rep.distance = Distance(0);
            rep.witness = std::move(*h);
        }
        break;
    }
    case Algo::dp_reg:
        rep.distance = mismatch_reg_dp(w, alpha, opts.strict);
        break;
    case Algo::fast_reg:
        if (rep.delta) {
            MismatchRegResult r = mismatch_reg(w, alpha, *rep.delta, detail::reg_options(opts));
            if (r.accepted) {
                rep.distance = r.distance;
                rep.witness = std::move(r.witness);
            }
        } else {
            detail::set_result(rep, min_mismatch_reg(w, alpha, detail::reg_options(opts)));
        }
        break;
    case Algo::one_var: {
        UnaryResult r = min_mismatch_1var(w, alpha);
        rep.distance = r.distance;
        if (r.distance.is_finite()) rep.witness = Substitution{{alpha.variables().front(), r.image}};
        break;
    }
    case Algo::noncross:
        detail::set_result(rep, min_mismatch_noncross(w, alpha));
        break;
    case Algo::onerep:
        detail::set_result(rep, min_mismatch_1repvar(w, alpha));
        break;
    case Algo::approx2:
        rep.exact = false;
        detail::set_result(rep, approx2_1repvar(w, alpha));
        break;
    case Algo::ptas:
        rep.exact = false;
        detail::set_result(rep, ptas_1repvar(w, alpha, PtasConfig{opts.r, opts.union_approx2}));
        break;
    case Algo::klocal:
        try {
            detail::set_result(rep, min_mismatch_klocal(w, alpha, *marking, klocal_opts));
            break;
        } catch (const BudgetExceeded&) {
            if (opts.algo != Algo::automatic) throw;
        }
        // Auto mode: the oracle is next in line.
        algo = Algo::oracle;
        rep.algo = algo_name(algo);
        [[fallthrough]];
    case Algo::oracle: {
        OracleResult r;
        try {
            r = brute_force_min_mismatch(w, alpha, oracle_opts);
        } catch (const BudgetExceeded& e) {
            if (opts.algo == Algo::automatic)
                throw UnsupportedClass(std::string("no applicable solver within budget: ") +
                                       e.what());
            throw;
        }
        rep.distance = r.distance;
        if (r.distance.is_finite()) rep.witness = std::move(r.witness);
        break;
    }
    case Algo::automatic:
        break;
    }
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    rep.lcs_queries = instrumentation::lcs_query_total();

    if (rep.delta) rep.accepted = rep.distance && *rep.distance <= Distance(*rep.delta);

    if (rep.witness && rep.distance && rep.distance->is_finite()) {
        try {
            rep.verified = substitution_distance(alpha, *rep.witness, w) == *rep.distance;
        } catch (const Error&) {
            rep.verified = false;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

inline std::string hex_digest(std::uint64_t d) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << d;
    return os.str();
}

inline nlohmann::ordered_json report_json(const RunReport& rep, const Instance& inst) {
    nlohmann::ordered_json j;
    j["class"] = rep.pattern_class;
    j["algo"] = rep.algo;
    j["exact"] = rep.exact;
    if (!rep.distance)
        j["distance"] = nullptr;
    else if (rep.distance->is_finite())
        j["distance"] = rep.distance->value();
    else
        j["distance"] = "inf";
    if (rep.delta) {
        j["delta"] = *rep.delta;
        j["accepted"] = rep.accepted;
    }
    if (rep.witness) {
        nlohmann::ordered_json wj = nlohmann::ordered_json::object();
        const std::string sep = inst.alphabet.single_chars() ? "" : " ";
        for (VarId x : inst.pattern.variables()) {
            auto it = rep.witness->find(x);
            if (it != rep.witness->end()) wj[inst.pattern.name(x)] = inst.alphabet.spell(it->second, sep);
        }
        j["witness"] = std::move(wj);
        j["verified"] = rep.verified;
    }
    j["lcs_queries"] = rep.lcs_queries;
    j["wall_ms"] = rep.wall_ms;
    j["digest"] = hex_digest(rep.digest);
    j["n"] = rep.n;
    j["m"] = rep.m;
    return j;
}

inline void print_report(std::ostream& out, const RunReport& rep, const Instance& inst, const std::string& format) {
    const nlohmann::ordered_json j = report_json(rep, inst);
    if (format == "json") {
        out << j.dump() << '\n';
        return;
    }
    auto cell = [](const nlohmann::ordered_json& v) {
        if (v.is_string()) return v.get<std::string>();
        return v.dump();
    };
    if (format == "csv") {
        static const std::vector<std::string> cols = {"class", "algo", "exact", "distance", "delta", "accepted",
                                                      "verified", "lcs_queries", "wall_ms", "digest", "n", "m"};
        for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
        out << '\n';
        for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << (j.contains(cols[i]) ? cell(j[cols[i]]) : "");
        out << '\n';
        return;
    }
    std::size_t width = 0;
    for (const auto& [key, v] : j.items()) width = std::max(width, key.size());
    for (const auto& [key, v] : j.items()) {
        out << std::left << std::setw(static_cast<int>(width) + 2) << key;
        if (key == "witness") {
            out << (rep.witness ? format_substitution(inst.pattern, *rep.witness, inst.alphabet) : "") << '\n';
        } else {
            out << cell(v) << '\n';
        }
    }
}

inline nlohmann::ordered_json classify_json(const Pattern& alpha) {
    const PatternClass c = classify(alpha);
    nlohmann::ordered_json j;
    j["class"] = c.label();
    j["variables"] = c.variable_count;
    j["regular"] = c.is_regular;
    j["unary"] = c.is_unary;
    j["noncross"] = c.is_noncross;
    j["one_rep_var"] = c.is_one_rep_var;
    j["scd"] = c.scd;
    if (c.repeated) {
        j["repeated"] = alpha.name(*c.repeated);
        j["x_blocks"] = c.x_block_count;
    }
    j["locality"] = c.locality;
    j["locality_exact"] = c.locality_exact;
    std::vector<std::string> order;
    for (VarId x : c.marking.order) order.push_back(alpha.name(x));
    j["marking"] = order;
    return j;
}

// ---------------------------------------------------------------------------
// Bench
// ---------------------------------------------------------------------------

struct BenchRow {
    std::string file;
    std::string algo;
    std::string status;  // ok, rejected, timeout, budget, unsupported, parse, error
    std::size_t n = 0;
    std::optional<std::uint64_t> delta;
    std::string distance;
    double wall_ms = 0;
    std::uint64_t lcs_queries = 0;
};

/// Least-squares slope of log y against log x; nullopt with fewer than two
/// distinct x values.
inline std::optional<double> loglog_slope(const std::vector<std::pair<double, double>>& pts) {
    std::vector<std::pair<double, double>> use;
    for (const auto& [x, y] : pts)
        if (x > 0 && y > 0) use.emplace_back(std::log(x), std::log(y));
    if (use.size() < 2) return std::nullopt;
    double mx = 0, my = 0;
    for (const auto& [x, y] : use) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(use.size());
    my /= static_cast<double>(use.size());
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : use) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx <= 1e-12) return std::nullopt;
    return sxy / sxx;
}

namespace detail {

inline std::string status_of(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e)) return "parse";
    if (dynamic_cast<const BudgetExceeded*>(&e)) return "budget";
    if (dynamic_cast<const UnsupportedClass*>(&e) || dynamic_cast<const NotOneRepVar*>(&e) ||
        dynamic_cast<const NotNonCross*>(&e) || dynamic_cast<const InvalidWitness*>(&e))
        return "unsupported";
    return "error";
}

inline BenchRow bench_once(const Instance& inst, SolveOptions opts) {
    BenchRow row;
    row.n = inst.word.size();
    row.algo = algo_name(opts.algo);
    try {
        const RunReport rep = solve(inst, opts);
        row.algo = rep.algo;
        row.delta = rep.delta;
        row.status = !rep.verified ? "unverified" : rep.accepted ? "ok" : "rejected";
        row.distance = rep.distance ? rep.distance->to_string() : "";
        row.wall_ms = rep.wall_ms;
        row.lcs_queries = rep.lcs_queries;
    } catch (const std::exception& e) {
        row.status = status_of(e);
        row.delta = opts.delta ? opts.delta : inst.delta;
    }
    return row;
}

inline nlohmann::json row_json(const BenchRow& r) {
    nlohmann::json j{{"algo", r.algo},         {"status", r.status},           {"n", r.n},
                     {"distance", r.distance}, {"wall_ms", r.wall_ms},        {"lcs_queries", r.lcs_queries}};
    if (r.delta) j["delta"] = *r.delta;
    return j;
}

inline BenchRow row_from_json(const nlohmann::json& j) {
    BenchRow r;
    r.algo = j.at("algo");
    r.status = j.at("status");
    r.n = j.at("n");
    r.distance = j.at("distance");
    r.wall_ms = j.at("wall_ms");
    r.lcs_queries = j.at("lcs_queries");
    if (j.contains("delta")) r.delta = j.at("delta").get<std::uint64_t>();
    return r;
}

/// Runs bench_once in a child process so a runaway instance can be killed.
inline BenchRow bench_guarded(const Instance& inst, const SolveOptions& opts, double timeout_s) {
#ifdef VARPAT_CLI_FORK
    if (timeout_s > 0) {
        int fds[2];
        if (pipe(fds) == 0) {
            std::fflush(nullptr);
            const pid_t pid = fork();
            if (pid == 0) {
                close(fds[0]);
                const std::string text = row_json(bench_once(inst, opts)).dump();
                std::size_t off = 0;
                while (off < text.size()) {
                    const ssize_t k = write(fds[1], text.data() + off, text.size() - off);
                    if (k <= 0) break;
                    off += static_cast<std::size_t>(k);
                }
                close(fds[1]);
                _exit(0);
            }
            close(fds[1]);
            if (pid > 0) {
                std::string text;
                const auto deadline =
                    std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout_s);
                bool timed_out = false;
                char buf[4096];
                while (true) {
                    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                        deadline - std::chrono::steady_clock::now());
                    if (left.count() <= 0) {
                        timed_out = true;
                        break;
                    }
                    pollfd p{fds[0], POLLIN, 0};
                    const int ready = poll(&p, 1, static_cast<int>(left.count()));
                    if (ready == 0) {
                        timed_out = true;
                        break;
                    }
                    if (ready < 0) break;
                    const ssize_t k = read(fds[0], buf, sizeof buf);
                    if (k <= 0) break;
                    text.append(buf, static_cast<std::size_t>(k));
                }
                close(fds[0]);
                if (timed_out) kill(pid, SIGKILL);
                int status = 0;
                waitpid(pid, &status, 0);
                BenchRow row;
                row.n = inst.word.size();
                row.algo = algo_name(opts.algo);
                row.delta = opts.delta ? opts.delta : inst.delta;
                if (timed_out) {
                    row.status = "timeout";
                    row.wall_ms = timeout_s * 1000.0;
                    return row;
                }
                try {
                    return row_from_json(nlohmann::json::parse(text));
                } catch (const nlohmann::json::exception&) {
                    row.status = "error";
                    return row;
                }
            }
            close(fds[0]);
        }
    }
#endif
    (void)timeout_s;
    return bench_once(inst, opts);
}

}  // namespace detail

/// Instances (*.json, *.txt) of `dir` in name order.
inline std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const auto ext = entry.path().extension();
        if (ext == ".json" || ext == ".txt") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

/// CSV rows per (instance, algorithm), then '#'-prefixed slope summaries of
/// lcs_queries and wall time against n (fixed delta) and against delta+1
/// (fixed n). Oracle runs over budget are left out.
inline void run_bench(std::ostream& out, const std::vector<std::filesystem::path>& files,
                      const std::vector<Algo>& algos, SolveOptions base, double timeout_s) {
    out << "file,algo,status,n,delta,distance,wall_ms,lcs_queries\n";
    std::vector<BenchRow> rows;
    for (const auto& path : files) {
        std::optional<Instance> inst;
        BenchRow fail;
        fail.file = path.filename().string();
        try {
            std::ifstream in(path);
            if (!in) throw ParseError("cannot open " + path.string());
            inst = read_instance(in);
        } catch (const std::exception& e) {
            fail.status = detail::status_of(e);
        }
        for (Algo a : algos) {
            BenchRow row = fail;
            if (inst) {
                SolveOptions opts = base;
                opts.algo = a;
                row = detail::bench_guarded(*inst, opts, timeout_s);
                row.file = path.filename().string();
                if (a == Algo::oracle && row.status == "budget") continue;
            } else {
                row.algo = algo_name(a);
            }
            out << row.file << ',' << row.algo << ',' << row.status << ',' << row.n << ','
                << (row.delta ? std::to_string(*row.delta) : "") << ',' << row.distance << ',' << std::fixed
                << std::setprecision(3) << row.wall_ms << std::defaultfloat << ',' << row.lcs_queries << '\n';
            rows.push_back(std::move(row));
        }
    }

    // Slope summaries over successful runs.
    std::map<std::pair<std::string, std::uint64_t>, std::vector<const BenchRow*>> by_delta;
    std::map<std::pair<std::string, std::size_t>, std::vector<const BenchRow*>> by_n;
    for (const BenchRow& r : rows) {
        if (r.status != "ok" && r.status != "rejected") continue;
        if (r.delta) {
            by_delta[{r.algo, *r.delta}].push_back(&r);
            by_n[{r.algo, r.n}].push_back(&r);
        }
    }
    auto emit = [&](const std::string& label, const std::vector<std::pair<double, double>>& q,
                    const std::vector<std::pair<double, double>>& t) {
        const auto sq = loglog_slope(q);
        const auto st = loglog_slope(t);
        if (!sq && !st) return;
        out << "# " << label;
        if (sq) out << " slope_lcs_queries=" << std::setprecision(3) << *sq;
        if (st) out << " slope_wall_ms=" << std::setprecision(3) << *st;
        out << std::defaultfloat << '\n';
    };
    for (const auto& [key, group] : by_delta) {
        std::vector<std::pair<double, double>> q, t;
        for (const BenchRow* r : group) {
            q.emplace_back(static_cast<double>(r->n), static_cast<double>(r->lcs_queries));
            t.emplace_back(static_cast<double>(r->n), r->wall_ms);
        }
        emit("algo=" + key.first + " delta=" + std::to_string(key.second) + " x=n", q, t);
    }
    for (const auto& [key, group] : by_n) {
        std::vector<std::pair<double, double>> q, t;
        for (const BenchRow* r : group) {
            q.emplace_back(static_cast<double>(*r->delta + 1), static_cast<double>(r->lcs_queries));
            t.emplace_back(static_cast<double>(*r->delta + 1), r->wall_ms);
        }
        emit("algo=" + key.first + " n=" + std::to_string(key.second) + " x=delta+1", q, t);
    }
}

}  // namespace varpat::cli

#endif
