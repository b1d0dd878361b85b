// Solves x1 x1 bab x2 x2 against aaaababbb with every solver that accepts
// it, then a few mutated words.
#include <iostream>
#include <string>

#include "varpat/varpat.hpp"

using namespace varpat;

namespace {

void report(const std::string& solver, const Instance& inst, const MatchResult& r) {
    std::cout << "  " << solver << ": distance " << r.distance.to_string();
    if (r.distance.is_finite()) std::cout << "  {" << format_substitution(inst.pattern, r.witness, inst.alphabet) << "}";
    std::cout << '\n';
}

void solve_all(const Instance& inst) {
    const PatternClass c = classify(inst.pattern);
    std::cout << inst.alphabet.spell(inst.word) << "  (" << c.label() << ", locality " << c.locality << ")\n";
    report("noncross", inst, min_mismatch_noncross(inst.word, inst.pattern));
    report("klocal  ", inst, min_mismatch_klocal(inst.word, inst.pattern, c.marking));
    const OracleResult o = brute_force_min_mismatch(inst.word, inst.pattern);
    report("oracle  ", inst, MatchResult{o.distance, o.witness});
}

}  // namespace

int main() {
    Instance inst = parse_text_instance("aaaababbb", "{x1}{x1}bab{x2}{x2}");

    // h(x1) = aa, h(x2) = b spells the word exactly.
    const Substitution h{{inst.pattern.variables()[0], Word{1, 1}}, {inst.pattern.variables()[1], Word{2}}};
    std::cout << "h(alpha) = " << inst.alphabet.spell(apply_substitution(inst.pattern, h)) << "\n\n";
    solve_all(inst);

    for (const char* text : {"abaababbb", "aaaabbbbb", "bbbbbbbbb"}) {
        std::cout << '\n';
        Instance next = parse_text_instance(text, "{x1}{x1}bab{x2}{x2}");
        solve_all(next);
    }
}
