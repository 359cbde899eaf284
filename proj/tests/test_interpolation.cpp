#include <gtest/gtest.h>

#include "corpus.hpp"
#include "qbfi/interpolation.hpp"

using namespace qbfi;

namespace {

Literal L(int d) { return Literal::from_dimacs(d); }

bool line_preceq(const Line& small, const Line& big) {
    if (const Clause* c = std::get_if<Clause>(&small)) return preceq_clause(*c, std::get<Clause>(big));
    return preceq_annotated(std::get<AnnotatedClause>(small), std::get<AnnotatedClause>(big));
}

std::optional<Line> restricted(const Line& l, const Assignment& a) {
    if (const Clause* c = std::get_if<Clause>(&l)) {
        auto r = restrict_clause(*c, a);
        return r ? std::optional<Line>(*r) : std::nullopt;
    }
    auto r = restrict_annotated(std::get<AnnotatedClause>(l), a);
    return r ? std::optional<Line>(*r) : std::nullopt;
}

std::vector<corpus::Golden> plain_goldens() {
    std::vector<corpus::Golden> out;
    for (const auto& g : corpus::goldens())
        if (!g.fb) out.push_back(g);
    return out;
}

// Every assignment yields a valid one-sided refutation whose lines weaken
// the restricted originals.
void check_restrictions(const ProofTrace& t, const Qbf& f, const Circuit& c, const std::string& name) {
    for (const Assignment& a : p_assignments(f)) {
        RestrictedProof rp = restrict_proof(t, f, c, a);
        EXPECT_EQ(rp.side, eval_circuit(c, a) ? Side::R : Side::Q) << name;
        CheckReport r = check_refutation(rp.trace, rp.formula);
        EXPECT_TRUE(r.valid) << name << ": " << r.detail;
        for (const auto& [id, line] : rp.nodes) {
            if (!line) continue;
            auto orig = restricted(t.step(id).conclusion, a);
            ASSERT_TRUE(orig.has_value()) << name << " step " << id;
            EXPECT_TRUE(line_preceq(*line, *orig)) << name << " step " << id;
        }
    }
}

}  // namespace

TEST(Extract, GateCountEqualsStepCount) {
    for (const auto& g : plain_goldens()) {
        Qbf f = corpus::formula(g);
        ProofTrace t = corpus::trace(g, f);
        Circuit c = extract_circuit(t, f);
        ASSERT_EQ(c.gates.size(), t.steps.size()) << g.trace;
        for (std::size_t i = 0; i < t.steps.size(); ++i) {
            EXPECT_EQ(c.gates[i].id, t.steps[i].id);
            EXPECT_EQ(c.gates[i].provenance, t.steps[i].id);
        }
        EXPECT_EQ(c.output, t.root().id);
        EXPECT_EQ(c.inputs, f.variables_on(Side::P));
    }
}

TEST(Extract, SelForPPivot) {
    Qbf f = parse_qdimacs(corpus::slurp("sel5.qdimacs"));
    Circuit c = extract_circuit(parse_trace(corpus::slurp("sel5.qrtf"), f), f);
    EXPECT_EQ(c.gate(1).kind, GateKind::Const0);  // A axiom
    EXPECT_EQ(c.gate(3).kind, GateKind::Const1);  // B axiom
    EXPECT_EQ(c.gate(2).kind, GateKind::Id);
    const Gate& root = c.gate(5);
    EXPECT_EQ(root.kind, GateKind::Sel);
    EXPECT_EQ(root.var, 1);
    EXPECT_EQ(root.a, 2);  // parent holding +x
    EXPECT_FALSE(eval_circuit(c, {{1, false}}));
    EXPECT_TRUE(eval_circuit(c, {{1, true}}));
}

TEST(Extract, InterpolantsSeparate) {
    for (const auto& g : plain_goldens()) {
        Qbf f = corpus::formula(g);
        ProofTrace t = corpus::trace(g, f);
        for (ExtractMode mode : {ExtractMode::General, ExtractMode::Monotone}) {
            Circuit c = extract_circuit(t, f, mode);
            SeparationReport r = verify_interpolant(c, f);
            EXPECT_TRUE(r.ok()) << g.trace;
            EXPECT_EQ(r.checked, std::size_t{1} << f.variables_on(Side::P).size());
        }
    }
}

TEST(Extract, MonotoneUsesMonotoneGates) {
    for (const auto& g : plain_goldens()) {
        Qbf f = corpus::formula(g);
        Circuit c = extract_circuit(corpus::trace(g, f), f, ExtractMode::Monotone);
        EXPECT_TRUE(c.is_monotone_gate_set()) << g.trace;
    }
}

TEST(Extract, MonotoneRejectsNegativePInA) {
    Qbf f({{1, Quantifier::Exists}, {2, Quantifier::Forall}, {3, Quantifier::Forall}},
          {make_clause({L(-1), L(2)}), make_clause({L(1), L(-3)})});
    f.set_partition({{1, Side::P}, {2, Side::Q}, {3, Side::R}});
    ProofTrace t = parse_trace(
        "s qrtf qres\n1 -1 2 0 AX 0\n2 -1 0 URED 1 0 2 0\n3 1 -3 0 AX 0\n4 1 0 URED 3 0 -3 0\n5 0 RES 4 2 0 1 0\n",
        f);
    ASSERT_TRUE(check_refutation(t, f).valid);
    EXPECT_NO_THROW(extract_circuit(t, f));
    try {
        extract_circuit(t, f, ExtractMode::Monotone);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::PNotPositive);
    }
}

TEST(Extract, RejectsInvalidAndUnpartitioned) {
    Qbf f = parse_qdimacs(corpus::slurp("qres1.qdimacs"));
    corpus::Mutation m{"qres1", "qres1", 3, "3 1 0 RES 1 2 0 3 0", "WRONG_CONCLUSION"};
    try {
        extract_circuit(parse_trace(corpus::apply(m), f), f);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NotVerified);
    }
    Qbf bare = parse_qdimacs(
        "p cnf 2 2\ne 1 0\na 2 0\n1 2 0\n-1 0\n");
    ProofTrace t = parse_trace("s qrtf qres\n1 1 2 0 AX 0\n2 1 0 URED 1 0 2 0\n3 -1 0 AX 0\n4 0 RES 2 3 0 1 0\n", bare);
    try {
        extract_circuit(t, bare);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NoPartition);
    }
}

TEST(Restrict, EveryAssignmentGivesAOneSidedRefutation) {
    for (const auto& g : plain_goldens()) {
        Qbf f = corpus::formula(g);
        ProofTrace t = corpus::trace(g, f);
        check_restrictions(t, f, extract_circuit(t, f), g.trace);
        check_restrictions(t, f, extract_circuit(t, f, ExtractMode::Monotone), g.trace + " monotone");
    }
}

TEST(Restrict, LinesMentionNoPVariable) {
    Qbf f = parse_qdimacs(corpus::slurp("irm1.qdimacs"));
    ProofTrace t = parse_trace(corpus::slurp("irm1.qrtf"), f);
    Circuit c = extract_circuit(t, f);
    for (bool v : {false, true}) {
        RestrictedProof rp = restrict_proof(t, f, c, {{1, v}});
        for (const ProofStep& s : rp.trace.steps)
            for (const auto& l : std::get<AnnotatedClause>(s.conclusion)) EXPECT_NE(l.literal.var, 1);
        EXPECT_EQ(rp.trace.calculus, Calculus::IRMCalc);
    }
}

TEST(Restrict, WrongCircuitIsRejected) {
    Qbf f = parse_qdimacs(corpus::slurp("sel5.qdimacs"));
    ProofTrace t = parse_trace(corpus::slurp("sel5.qrtf"), f);
    Circuit c = extract_circuit(t, f);
    c.gates.pop_back();
    c.output = 4;
    EXPECT_THROW(restrict_proof(t, f, c, {{1, true}}), Error);
}
