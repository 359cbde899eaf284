#include <gtest/gtest.h>

#include "corpus.hpp"
#include "qbfi/formula_gen.hpp"
#include "qbfi/oracle.hpp"

using namespace qbfi;

namespace {

Literal L(int d) { return Literal::from_dimacs(d); }

// Brute force: some 2 vertices form an edge of the graph whose edges are the
// pairs with p_uv = 1.
bool has_edge(const CliqueLayout& lay, const Assignment& a) {
    for (int u = 1; u <= lay.n; ++u)
        for (int v = u + 1; v <= lay.n; ++v)
            if (a.at(lay.p(u, v))) return true;
    return false;
}

}  // namespace

TEST(Clique, FamilyCountsForFour) {
    Qbf f = gen_clique_noclique(4);
    auto counts = clique_family_counts(f, 4);
    EXPECT_EQ(counts['C'], 2);
    EXPECT_EQ(counts['D'], 4);
    EXPECT_EQ(counts['E'], 12);
    EXPECT_EQ(counts['F'], 12);
    int a_side = 0;
    for (const Clause& c : f.matrix()) a_side += f.matrix_side(c) == Side::Q;
    EXPECT_EQ(a_side, 30);
}

TEST(Clique, VariableBlocks) {
    Qbf f = gen_clique_noclique(4);
    EXPECT_EQ(f.variables_on(Side::P).size(), 6u);
    EXPECT_EQ(f.variables_on(Side::Q).size(), 8u);
    CliqueLayout lay{4, 2};
    int r1 = 0;
    for (int v : f.variables_on(Side::R)) r1 += f.is_universal(v);
    EXPECT_EQ(r1, 4);
    for (int u = 1; u <= 4; ++u) EXPECT_TRUE(f.is_universal(lay.r1(u)));
    EXPECT_EQ(f.max_id(), lay.num_vars());
    EXPECT_NO_THROW(f.require_interpolation_shape());
}

TEST(Clique, CountsGrowWithN) {
    Qbf f = gen_clique_noclique(6);
    auto counts = clique_family_counts(f, 6);
    // k = 3: C = k, D = C(k,2)·n, E = k·C(n,2), F = k(k-1)·C(n,2)
    EXPECT_EQ(counts['C'], 3);
    EXPECT_EQ(counts['D'], 18);
    EXPECT_EQ(counts['E'], 45);
    EXPECT_EQ(counts['F'], 90);
}

TEST(Clique, BadN) {
    for (int n : {0, 1, 3, 5, -2}) {
        try {
            gen_clique_noclique(n);
            FAIL() << n;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::BadN);
        }
    }
}

TEST(Clique, FalseForSmallN) {
    EXPECT_FALSE(eval_qbf(gen_clique_noclique(2)));
    EXPECT_FALSE(eval_qbf(gen_clique_noclique(4)));
}

TEST(Clique, ASideIsTwoCliqueOfComplementCoding) {
    Qbf f = gen_clique_noclique(4);
    CliqueLayout lay{4, 2};
    for (const Assignment& a : p_assignments(f)) {
        bool a_true = eval_qbf(side_formula(f, Side::Q, a));
        EXPECT_EQ(a_true, has_edge(lay, a));
        // the two halves never hold together
        if (a_true) EXPECT_FALSE(eval_qbf(side_formula(f, Side::R, a)));
    }
}

TEST(Clique, CheckedInCopyMatchesGenerator) {
    EXPECT_EQ(write_qdimacs(gen_clique_noclique(4)), corpus::slurp("clique4.qdimacs"));
}

TEST(Fb, MarksClausesBySide) {
    Qbf f({{1, Quantifier::Exists}, {2, Quantifier::Exists}, {3, Quantifier::Exists}},
          {make_clause({L(1), L(2)}), make_clause({L(-1), L(3)}), {L(1)}});
    f.set_partition({{1, Side::P}, {2, Side::Q}, {3, Side::R}});
    Qbf fb = gen_fb(f);
    const int b = fb.b_variable();
    EXPECT_EQ(b, 4);
    EXPECT_TRUE(fb.is_universal(b));
    EXPECT_EQ(fb.index(b), 2);  // right after p
    EXPECT_EQ(fb.matrix()[0], make_clause({L(1), L(2), L(4)}));
    EXPECT_EQ(fb.matrix()[1], make_clause({L(-1), L(3), L(-4)}));
    EXPECT_EQ(fb.matrix()[2], make_clause({L(1), L(4)}));
    EXPECT_NO_THROW(fb.require_interpolation_shape());
}

TEST(Fb, CheckedInFormulasMatch) {
    EXPECT_EQ(write_qdimacs(gen_fb(parse_qdimacs(corpus::slurp("fbqu1_base.qdimacs")))),
              corpus::slurp("fbqu1.qdimacs"));
    EXPECT_EQ(write_qdimacs(gen_fb(parse_qdimacs(corpus::slurp("lqu1.qdimacs")))), corpus::slurp("lqu1b.qdimacs"));
    EXPECT_EQ(write_qdimacs(gen_fb(parse_qdimacs(corpus::slurp("irm1.qdimacs")))), corpus::slurp("irm1b.qdimacs"));
}

TEST(Fb, PreservesFalsity) {
    for (const char* name : {"sel5", "qres1", "lqu1", "lqu2", "irm1", "irm2", "ir1", "fbqu1_base", "clique4"}) {
        Qbf f = parse_qdimacs(corpus::slurp(std::string(name) + ".qdimacs"));
        ASSERT_FALSE(eval_qbf(f)) << name;
        EXPECT_FALSE(eval_qbf(gen_fb(f), {}, 32)) << name;  // b is one variable over the default cap on clique4
    }
}

TEST(Fb, Rejects) {
    Qbf plain({{1, Quantifier::Exists}}, {{L(1)}});
    try {
        gen_fb(plain);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NoPartition);
    }
    Qbf fb = parse_qdimacs(corpus::slurp("fbqu1.qdimacs"));
    EXPECT_THROW(gen_fb(fb), Error);
}
