// qbfi: command-line front-end.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qbfi/checker.hpp"
#include "qbfi/formula_gen.hpp"
#include "qbfi/interpolation.hpp"
#include "qbfi/oracle.hpp"
#include "qbfi/strategy.hpp"

using namespace qbfi;

namespace {

std::string slurp(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

int eval_cap() {
    if (const char* env = std::getenv("QBFI_CAP")) return std::atoi(env);
    return kDefaultEvalCap;
}

// "0110" over p in prefix order, or a file holding such a string.
Assignment parse_bits(const Qbf& f, std::string arg) {
    if (arg.find_first_not_of("01") != std::string::npos) arg = slurp(arg);
    std::string bits;
    for (char ch : arg)
        if (ch == '0' || ch == '1') bits += ch;
        else if (!std::isspace(static_cast<unsigned char>(ch))) throw Error(Errc::Syntax, "assignment is not a bit string");
    auto p = f.variables_on(Side::P);
    if (bits.size() != p.size())
        throw Error(Errc::PartialAssignment, std::to_string(p.size()) + " p variables, " +
                                                 std::to_string(bits.size()) + " bits given");
    Assignment a;
    for (std::size_t i = 0; i < p.size(); ++i) a[p[i]] = bits[i] == '1';
    return a;
}

int report_separation(const SeparationReport& r, const Qbf& f) {
    auto p = f.variables_on(Side::P);
    for (const auto& ce : r.counterexamples) {
        std::string bits;
        for (int v : p) bits += ce.a.at(v) ? '1' : '0';
        std::cout << "COUNTEREXAMPLE " << bits << " value " << ce.value << " but "
                  << (ce.value ? "B" : "A") << "-side is true\n";
    }
    std::cout << (r.ok() ? "VERIFIED" : "FAILED") << " " << r.checked << " assignments, "
              << r.counterexamples.size() << " counterexamples\n";
    return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"QBF resolution proofs: checking, interpolation, strategy extraction"};
    app.require_subcommand(1);

    std::string formula, proof, circuit_path, out_path, dot_path, assign, emit_path, calc_name;
    bool monotone = false, fb = false;
    int cap = kDefaultPCap, jobs = 1, n = 4;
    std::int64_t budget = 1000000;

    auto* check = app.add_subcommand("check", "verify a proof trace");
    check->add_option("formula", formula)->required();
    check->add_option("proof", proof)->required();
    check->add_option("--calculus", calc_name, "override the calculus named in the trace header");

    auto* interp = app.add_subcommand("interpolate", "extract an interpolation circuit");
    interp->add_option("formula", formula)->required();
    interp->add_option("proof", proof)->required();
    interp->add_flag("--monotone", monotone);
    interp->add_option("--out", out_path);
    interp->add_option("--dot", dot_path);

    auto* restrict = app.add_subcommand("restrict", "build the one-sided refutation for an assignment");
    restrict->add_option("formula", formula)->required();
    restrict->add_option("proof", proof)->required();
    restrict->add_option("circuit", circuit_path)->required();
    restrict->add_option("--assign", assign, "bits over p in prefix order, or a file")->required();
    restrict->add_option("--emit", emit_path);

    auto* vint = app.add_subcommand("verify-interpolant", "check a circuit on every p assignment");
    vint->add_option("formula", formula)->required();
    vint->add_option("circuit", circuit_path)->required();
    vint->add_option("--cap", cap);
    vint->add_option("--jobs", jobs);

    auto* gclique = app.add_subcommand(
        "gen-clique", "clique-no-clique formula; p_uv=1 marks a non-edge, so the interpolant "
                      "is the clique function of the complement graph");
    gclique->add_option("--n", n)->required();
    gclique->add_flag("--fb", fb);

    auto* gfb = app.add_subcommand("gen-fb", "insert b into A-clauses and -b into B-clauses");
    gfb->add_option("formula", formula);

    auto* xstrat = app.add_subcommand("extract-strategy", "strategy circuit for b from an Fb refutation");
    xstrat->add_option("formula", formula)->required();
    xstrat->add_option("proof", proof)->required();
    xstrat->add_flag("--monotone", monotone);
    xstrat->add_option("--out", out_path);

    auto* vstrat = app.add_subcommand("verify-strategy", "check a b-strategy on every p assignment");
    vstrat->add_option("formula", formula)->required();
    vstrat->add_option("circuit", circuit_path)->required();
    vstrat->add_option("--cap", cap);
    vstrat->add_option("--jobs", jobs);

    auto* solve = app.add_subcommand("solve", "search for a Q-Res refutation");
    solve->add_option("formula", formula);
    solve->add_option("--budget", budget);
    solve->add_option("--emit", emit_path);

    auto* eval = app.add_subcommand("eval", "evaluate a formula by brute force");
    eval->add_option("formula", formula);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*check) {
            Qbf f = parse_qdimacs(slurp(formula));
            ProofTrace t = parse_trace(slurp(proof), f);
            if (!calc_name.empty()) t.calculus = parse_calculus(calc_name);
            CheckReport r = check_refutation(t, f);
            if (!r.valid) {
                std::cout << "INVALID step " << r.first_failure->first << " "
                          << label(r.first_failure->second) << ": " << r.detail << "\n";
                return 1;
            }
            std::cout << "VALID " << to_string(t.calculus) << " " << t.steps.size() << " steps";
            for (auto& [rule, count] : r.stats) std::cout << " " << to_string(rule) << "=" << count;
            std::cout << "\n";
            return 0;
        }
        if (*interp || *xstrat) {
            Qbf f = parse_qdimacs(slurp(formula));
            ProofTrace t = parse_trace(slurp(proof), f);
            ExtractMode mode = monotone ? ExtractMode::Monotone : ExtractMode::General;
            Circuit c = *interp ? extract_circuit(t, f, mode) : extract_b_strategy(t, f, mode);
            spit(out_path, write_circuit(c));
            if (!dot_path.empty()) spit(dot_path, circuit_to_dot(c));
            return 0;
        }
        if (*restrict) {
            Qbf f = parse_qdimacs(slurp(formula));
            ProofTrace t = parse_trace(slurp(proof), f);
            Circuit c = read_circuit(slurp(circuit_path));
            Assignment a = parse_bits(f, assign);
            RestrictedProof rp = f.b_variable() ? restrict_proof_fb(t, f, c, a) : restrict_proof(t, f, c, a);
            CheckReport r = check_refutation(rp.trace, rp.formula);
            if (!emit_path.empty()) {
                spit(emit_path, write_trace(rp.trace));
                spit(emit_path + ".qdimacs", write_qdimacs(rp.formula));
            }
            std::cout << (rp.side == Side::Q ? "Q_SIDE" : "R_SIDE") << " " << rp.trace.steps.size()
                      << " steps " << (r.valid ? "VALID" : "INVALID") << "\n";
            return r.valid ? 0 : 1;
        }
        if (*vint) {
            Qbf f = parse_qdimacs(slurp(formula));
            Circuit c = read_circuit(slurp(circuit_path));
            return report_separation(check_separation(c, f, cap, jobs, eval_cap()), f);
        }
        if (*vstrat) {
            Qbf f = parse_qdimacs(slurp(formula));
            Circuit c = read_circuit(slurp(circuit_path));
            return report_separation(verify_b_strategy(c, f, cap, jobs, eval_cap()), f);
        }
        if (*gclique) {
            Qbf f = gen_clique_noclique(n);
            std::cout << write_qdimacs(fb ? gen_fb(f) : f);
            return 0;
        }
        if (*gfb) {
            std::cout << write_qdimacs(gen_fb(parse_qdimacs(slurp(formula))));
            return 0;
        }
        if (*solve) {
            Qbf f = parse_qdimacs(slurp(formula));
            auto t = find_qres_refutation(f, budget);
            if (!t) {
                std::cout << "EXHAUSTED budget " << budget << "\n";
                return 1;
            }
            if (emit_path.empty()) std::cout << write_trace(*t);
            else spit(emit_path, write_trace(*t));
            std::cout << (emit_path.empty() ? "c " : "") << "REFUTED " << t->steps.size() << " steps\n";
            return 0;
        }
        if (*eval) {
            Qbf f = parse_qdimacs(slurp(formula));
            std::cout << (eval_qbf(f, {}, eval_cap()) ? "TRUE" : "FALSE") << "\n";
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
