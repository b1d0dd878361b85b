#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli.hpp"

namespace {

using namespace varpat;
namespace cli = varpat::cli;

struct Common {
    std::string input;
    std::string word, pattern;
    std::string algo = "auto";
    std::optional<std::uint64_t> delta;
    std::size_t r = 3;
    std::optional<std::size_t> k;
    std::size_t max_k = 3;
    std::optional<std::uint64_t> budget;
    std::uint64_t seed = 1;
    bool trace = false;
    bool strict = false;
    bool minimize = false;
    bool no_union = false;
    std::string format = "table";
};

Instance load(const Common& c) {
    if (!c.word.empty() || !c.pattern.empty()) {
        if (c.pattern.empty()) throw ParseError("--word needs --pattern");
        return parse_text_instance(c.word, c.pattern);
    }
    if (c.input.empty() || c.input == "-") return read_instance(std::cin);
    std::ifstream in(c.input);
    if (!in) throw ParseError("cannot open " + c.input);
    return read_instance(in);
}

cli::SolveOptions solve_options(const Common& c) {
    cli::SolveOptions o;
    o.algo = cli::parse_algo(c.algo);
    o.delta = c.delta;
    o.r = c.r;
    o.union_approx2 = !c.no_union;
    o.k = c.k;
    o.max_k = c.max_k;
    o.budget = c.budget ? c.budget : cli::budget_from_env();
    o.strict = c.strict;
    if (c.trace) o.trace = &std::cerr;
    return o;
}

void add_solver_flags(CLI::App* app, Common& c) {
    std::vector<std::string> algos;
    for (const auto& [name, a] : cli::algo_names()) algos.push_back(name);
    algos.push_back("exact");
    app->add_option("--algo", c.algo, "Solver")->check(CLI::IsMember(algos));
    app->add_option("--delta", c.delta, "Decision mode: is the distance at most delta?");
    app->add_option("--r", c.r, "PTAS sample size")->check(CLI::PositiveNumber);
    app->add_flag("--no-union-approx2", c.no_union, "PTAS without the approx2 candidates");
    app->add_option("--k", c.k, "Locality for --algo klocal")->check(CLI::PositiveNumber);
    app->add_option("--max-k", c.max_k, "Largest locality tried by auto dispatch");
    app->add_option("--budget", c.budget, "Enumeration / tuple budget (env VARPAT_BUDGET)");
    app->add_flag("--strict", c.strict, "Regular solvers: interior variable runs must be nonempty");
    app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "table", "csv"}));
}

void emit_instances(const std::vector<Instance>& insts, const std::string& out_dir, const std::string& stem) {
    if (out_dir.empty()) {
        for (const Instance& inst : insts) std::cout << to_json(inst).dump() << '\n';
        return;
    }
    std::filesystem::create_directories(out_dir);
    for (std::size_t i = 0; i < insts.size(); ++i) {
        std::ostringstream name;
        name << stem << '-' << std::setw(4) << std::setfill('0') << i << ".json";
        std::ofstream out(std::filesystem::path(out_dir) / name.str());
        out << to_json(insts[i]).dump() << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"varpat: Hamming-distance matching of patterns with variables"};
    app.require_subcommand(1);

    Common c;

    CLI::App* match = app.add_subcommand("match", "Solve one instance (JSON or text)");
    match->add_option("input", c.input, "Instance file, '-' for stdin");
    match->add_option("--word", c.word, "Word as ASCII text");
    match->add_option("--pattern", c.pattern, "Pattern as text, variables as {name}");
    match->add_flag("--trace", c.trace, "Print the regular matcher's queue events to stderr");
    match->add_flag("--minimize", c.minimize, "Ignore a delta stored in the instance");
    add_solver_flags(match, c);

    CLI::App* cls = app.add_subcommand("classify", "Report the pattern classes of an instance");
    cls->add_option("input", c.input, "Instance file, '-' for stdin");
    cls->add_option("--word", c.word, "Word as ASCII text");
    cls->add_option("--pattern", c.pattern, "Pattern as text, variables as {name}");

    CLI::App* gen = app.add_subcommand("gen", "Generate instances");
    gen->require_subcommand(1);
    std::size_t n = 2, d = 2, k = 2, len = 4, m = 2, count = 1, vars = 3, mutations = 0;
    std::uint32_t sigma = 2;
    double density = 0.5;
    bool planted = false;
    std::optional<std::uint64_t> gen_delta;
    std::string kind = "regular", out_dir;
    gen->add_option("--seed", c.seed, "RNG seed");
    gen->add_option("--count", count, "Number of instances")->check(CLI::PositiveNumber);
    gen->add_option("--out-dir", out_dir, "Write one file per instance instead of JSON lines");
    CLI::App* gen_ov = gen->add_subcommand("ov", "Orthogonal Vectors reduction (regular pattern)");
    gen_ov->fallthrough();
    gen_ov->add_option("--n", n, "Vectors per set")->check(CLI::PositiveNumber);
    gen_ov->add_option("--d", d, "Dimension")->check(CLI::PositiveNumber);
    gen_ov->add_option("--density", density, "Probability of a 1 entry")->check(CLI::Range(0.0, 1.0));
    gen_ov->add_flag("--planted-orthogonal", planted, "Force one orthogonal pair");
    CLI::App* gen_cp = gen->add_subcommand("cp", "Consensus Patterns reduction (1RepVar pattern)");
    gen_cp->fallthrough();
    gen_cp->add_option("--k", k, "Number of strings")->check(CLI::PositiveNumber);
    gen_cp->add_option("--len", len, "String length")->check(CLI::PositiveNumber);
    gen_cp->add_option("--m", m, "Target length")->check(CLI::PositiveNumber);
    gen_cp->add_option("--sigma", sigma, "Alphabet size")->check(CLI::PositiveNumber);
    gen_cp->add_option("--delta", gen_delta, "CP threshold (default: the optimum when enumerable)");
    CLI::App* gen_rand = gen->add_subcommand("random", "Planted random instance of a class");
    gen_rand->fallthrough();
    gen_rand->add_option("--class", kind, "regular|unary|noncross|onerep|klocal");
    gen_rand->add_option("--n", n, "Target word length");
    gen_rand->add_option("--m", m, "Pattern length")->check(CLI::PositiveNumber);
    gen_rand->add_option("--sigma", sigma, "Alphabet size")->check(CLI::PositiveNumber);
    gen_rand->add_option("--vars", vars, "Variable limit")->check(CLI::PositiveNumber);
    gen_rand->add_option("--mutations", mutations, "Letters changed after planting");
    gen_rand->add_option("--delta", gen_delta, "Delta stored in the instance");

    CLI::App* bench = app.add_subcommand("bench", "Run solvers over a corpus directory, CSV out");
    std::string corpus;
    std::vector<std::string> bench_algos{"auto"};
    double timeout_s = 60;
    bench->add_option("corpus", corpus, "Directory of *.json / *.txt instances")->required()->check(CLI::ExistingDirectory);
    bench->add_option("--algos", bench_algos, "Solvers to run (comma separated)")->delimiter(',');
    bench->add_option("--timeout", timeout_s, "Per-instance limit in seconds (0 disables)");
    bench->add_option("--delta", c.delta, "Override the instance delta");
    bench->add_option("--r", c.r, "PTAS sample size");
    bench->add_option("--max-k", c.max_k, "Largest locality tried by auto dispatch");
    bench->add_option("--budget", c.budget, "Enumeration / tuple budget (env VARPAT_BUDGET)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::exit_code::parse;
    }

    try {
        if (*match) {
            Instance inst = load(c);
            if (c.minimize) inst.delta.reset();
            const cli::RunReport rep = cli::solve(inst, solve_options(c));
            cli::print_report(std::cout, rep, inst, c.format);
            if (!rep.verified) std::cerr << "error: witness re-verification failed\n";
            return rep.exit_status();
        }
        if (*cls) {
            const Instance inst = load(c);
            std::cout << cli::classify_json(inst.pattern).dump() << '\n';
            return cli::exit_code::solved;
        }
        if (*gen) {
            std::mt19937_64 rng(c.seed);
            std::vector<Instance> insts;
            for (std::size_t i = 0; i < count; ++i) {
                if (*gen_ov) {
                    insts.push_back(ov_to_reg(random_ov(rng, n, d, density, planted)));
                } else if (*gen_cp) {
                    if (m > len) throw std::invalid_argument("--m must not exceed --len");
                    CpInstance cp = random_cp(rng, k, len, m, sigma);
                    if (gen_delta) {
                        cp.delta = *gen_delta;
                    } else {
                        try {
                            cp.delta = solve_cp_naive(cp);
                        } catch (const BudgetExceeded&) {
                            cp.delta = 0;
                        }
                    }
                    insts.push_back(cp_to_1repvar(cp));
                } else {
                    Instance inst = random_instance(rng, parse_pattern_kind(kind), n, m, sigma, vars, mutations);
                    inst.delta = gen_delta;
                    insts.push_back(std::move(inst));
                }
            }
            const std::string stem = *gen_ov ? "ov" : *gen_cp ? "cp" : kind;
            emit_instances(insts, out_dir, stem);
            return cli::exit_code::solved;
        }
        if (*bench) {
            std::vector<cli::Algo> algos;
            for (const std::string& a : bench_algos) algos.push_back(cli::parse_algo(a));
            cli::SolveOptions base = solve_options(c);
            cli::run_bench(std::cout, cli::corpus_files(corpus), algos, base, timeout_s);
            return cli::exit_code::solved;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return cli::exit_code::parse;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return cli::exit_code::budget;
    } catch (const UnsupportedClass& e) {
        std::cerr << "unsupported: " << e.what() << '\n';
        return cli::exit_code::unsupported;
    } catch (const NotOneRepVar& e) {
        std::cerr << "unsupported: " << e.what() << '\n';
        return cli::exit_code::unsupported;
    } catch (const NotNonCross& e) {
        std::cerr << "unsupported: " << e.what() << '\n';
        return cli::exit_code::unsupported;
    } catch (const InvalidWitness& e) {
        std::cerr << "unsupported: " << e.what() << '\n';
        return cli::exit_code::unsupported;
    } catch (const std::invalid_argument& e) {
        std::cerr << "bad arguments: " << e.what() << '\n';
        return cli::exit_code::parse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::exit_code::unsupported;
    }
    return cli::exit_code::solved;
}
