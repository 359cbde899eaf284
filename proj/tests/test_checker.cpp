#include <gtest/gtest.h>

#include <functional>

#include "corpus.hpp"
#include "qbfi/checker.hpp"

using namespace qbfi;

namespace {

Literal L(int d) { return Literal::from_dimacs(d); }
Literal S(int v) { return Literal::star(v); }

std::string violation_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const StepFailure& e) {
        return label(e.violation);
    }
    return "OK";
}

// ∃1 ∀2 ∃3 ∀4 ∃5
Qbf chain() {
    return Qbf({{1, Quantifier::Exists}, {2, Quantifier::Forall}, {3, Quantifier::Exists},
                {4, Quantifier::Forall}, {5, Quantifier::Exists}},
               {make_clause({L(1), L(2), L(3)}), make_clause({L(-3), L(-4), L(5)})});
}

}  // namespace

TEST(Golden, AllValid) {
    for (const auto& g : corpus::goldens()) {
        Qbf f = corpus::formula(g);
        ProofTrace t = corpus::trace(g, f);
        CheckReport r = check_refutation(t, f);
        EXPECT_TRUE(r.valid) << g.trace << ": " << r.detail;
    }
}

TEST(Golden, RuleStats) {
    Qbf f = parse_qdimacs(corpus::slurp("irm1.qdimacs"));
    CheckReport r = check_refutation(parse_trace(corpus::slurp("irm1.qrtf"), f), f);
    EXPECT_EQ(r.stats[Rule::Axiom], 5);
    EXPECT_EQ(r.stats[Rule::Res], 4);
    EXPECT_EQ(r.stats[Rule::Inst], 1);
    EXPECT_EQ(r.stats[Rule::Merge], 1);
}

TEST(Mutation, EachFailsWithItsLabel) {
    ASSERT_GE(corpus::mutations().size(), 25u);
    for (const auto& m : corpus::mutations()) {
        std::string got = corpus::outcome(corpus::slurp(m.formula + ".qdimacs"), corpus::apply(m));
        EXPECT_EQ(got, m.label) << m.trace << " step " << m.step << ": " << m.replacement;
    }
}

TEST(Mutation, ApplyLeavesOtherLinesAlone) {
    corpus::Mutation m{"sel5", "sel5", 5, "", "NO_EMPTY_ROOT"};
    std::string out = corpus::apply(m);
    EXPECT_EQ(out.find("RES 2 4"), std::string::npos);
    EXPECT_NE(out.find("4 -1 0 URED 3 0 -3 0"), std::string::npos);
}

TEST(Rules, ReduceUniversal) {
    Qbf f = chain();
    EXPECT_EQ(reduce_universal(f, make_clause({L(1), L(2)}), L(2), Calculus::QRes), make_clause({L(1)}));
    EXPECT_EQ(violation_of([&] { reduce_universal(f, make_clause({L(2), L(3)}), L(2), Calculus::QRes); }),
              "RED_INDEX");
    EXPECT_EQ(violation_of([&] { reduce_universal(f, make_clause({L(1), L(2)}), L(1), Calculus::QRes); }),
              "RED_NOT_UNIVERSAL");
    EXPECT_EQ(violation_of([&] { reduce_universal(f, make_clause({L(1), L(2)}), L(-2), Calculus::QRes); }),
              "RED_MISSING");
    EXPECT_EQ(reduce_universal(f, make_clause({L(1), S(2)}), S(2), Calculus::LQUPlus), make_clause({L(1)}));
    EXPECT_EQ(violation_of([&] { reduce_universal(f, make_clause({L(1), S(2)}), S(2), Calculus::QURes); }),
              "RULE_NOT_IN_CALCULUS");
}

TEST(Rules, ResolveCdclPerCalculus) {
    Qbf f = chain();
    Clause c1 = make_clause({L(1), L(2), L(3)});
    Clause c2 = make_clause({L(-2), L(-3), L(5)});
    // long-distance merge of 2 needs index(2) > index(pivot); 2 is left of 3
    EXPECT_EQ(violation_of([&] { resolve_cdcl(f, c1, c2, L(3), Calculus::LDQRes); }), "U_INDEX");
    EXPECT_EQ(violation_of([&] { resolve_cdcl(f, c1, c2, L(3), Calculus::QRes); }), "TAUTOLOGY_RESOLVENT");

    Clause d1 = make_clause({L(1), L(4)});
    Clause d2 = make_clause({L(-1), L(-4), L(5)});
    EXPECT_EQ(resolve_cdcl(f, d1, d2, L(1), Calculus::LDQRes), make_clause({S(4), L(5)}));
    EXPECT_EQ(resolve_cdcl(f, make_clause({L(3), L(4)}), make_clause({L(-3), S(4)}), L(3), Calculus::LQUPlus),
              make_clause({S(4)}));

    // universal pivots only in QU-Res and LQU+
    Clause u1 = make_clause({L(1), L(4)});
    Clause u2 = make_clause({L(1), L(-4)});
    EXPECT_EQ(violation_of([&] { resolve_cdcl(f, u1, u2, L(4), Calculus::QRes); }), "PIVOT_KIND");
    EXPECT_EQ(resolve_cdcl(f, u1, u2, L(4), Calculus::QURes), make_clause({L(1)}));
    EXPECT_EQ(violation_of([&] { resolve_cdcl(f, u1, u2, S(4), Calculus::LQUPlus); }), "STAR_PIVOT");
    EXPECT_EQ(violation_of([&] { resolve_cdcl(f, u2, u1, L(4), Calculus::QURes); }), "PIVOT_MISSING");

    // an existential may never clash outside the pivot
    Clause e1 = make_clause({L(1), L(3)});
    Clause e2 = make_clause({L(-1), L(-3)});
    EXPECT_EQ(violation_of([&] { resolve_cdcl(f, e1, e2, L(1), Calculus::LQUPlus); }), "EXISTENTIAL_CLASH");
}

TEST(Rules, ExpansionAxiom) {
    Qbf f = chain();
    AnnotatedClause a = expansion_axiom(f, f.matrix()[1]);
    AnnotatedClause want = make_annotated_clause({{L(-3), {}}, {L(5), {{4, AnnValue::One}}}});
    EXPECT_EQ(a, want);
}

TEST(Rules, ResolveExpansionInstantiatesBothSides) {
    Qbf f = chain();
    using A = AnnotatedLiteral;
    AnnotatedClause c1 = make_annotated_clause({A{L(3), {{2, AnnValue::Zero}}}, A{L(1), {}}});
    AnnotatedClause c2 = make_annotated_clause({A{L(-3), {}}, A{L(5), {{4, AnnValue::One}}}});
    ExpansionPivot p{A{L(3), {}}, std::nullopt, std::nullopt};
    AnnotatedClause got = resolve_expansion(f, c1, c2, p, Calculus::IRMCalc);
    AnnotatedClause want = make_annotated_clause({A{L(1), {}}, A{L(5), {{2, AnnValue::Zero}, {4, AnnValue::One}}}});
    EXPECT_EQ(got, want);
    EXPECT_EQ(violation_of([&] { resolve_expansion(f, c1, c2, p, Calculus::IRCalc); }),
              "PIVOT_ANNOTATION_MISMATCH");
}

TEST(Rules, MergeLiterals) {
    using A = AnnotatedLiteral;
    A m0{L(5), {{2, AnnValue::Zero}}}, m1{L(5), {{2, AnnValue::One}}}, ms{L(5), {{2, AnnValue::Star}}};
    AnnotatedClause c = make_annotated_clause({m0, m1, A{L(1), {}}});
    EXPECT_EQ(merge_literals(c, ms, m0, m1), make_annotated_clause({ms, A{L(1), {}}}));
    EXPECT_EQ(violation_of([&] { merge_literals(c, ms, m0, m0); }), "MERGE_SOURCE");
    A other{L(5), {{2, AnnValue::Zero}, {4, AnnValue::Zero}}};
    AnnotatedClause d = make_annotated_clause({m0, other});
    EXPECT_EQ(violation_of([&] { merge_literals(d, ms, m0, other); }), "MERGE_DOMAIN");
}

TEST(Classify, QAndRClauses) {
    Qbf f = parse_qdimacs(corpus::slurp("lqu1.qdimacs"));
    ProofTrace t = parse_trace(corpus::slurp("lqu1.qrtf"), f);
    auto cls = classify_clauses(t, f);
    EXPECT_EQ(cls.at(3), ClauseClass::QClause);
    EXPECT_EQ(cls.at(9), ClauseClass::RClause);
    EXPECT_EQ(to_string(cls.at(1)), "Q_CLAUSE");
    EXPECT_EQ(axiom_side(t.step(7), f), Side::R);
    EXPECT_EQ(classify_clause(11, t, f), ClauseClass::RClause);
}
