#include <gtest/gtest.h>

#include "qbfi/model.hpp"

using namespace qbfi;

namespace {

Literal L(int d) { return Literal::from_dimacs(d); }
Literal S(int v) { return Literal::star(v); }

// ∃1 ∀2 ∃3 ∀4 ∃5
Qbf chain() {
    return Qbf({{1, Quantifier::Exists}, {2, Quantifier::Forall}, {3, Quantifier::Exists},
                {4, Quantifier::Forall}, {5, Quantifier::Exists}},
               {make_clause({L(1), L(2), L(3)}), make_clause({L(-3), L(-4), L(5)})});
}

Annotation ann(std::initializer_list<std::pair<const int, AnnValue>> e) { return Annotation(e); }

constexpr AnnValue Z = AnnValue::Zero, O = AnnValue::One, X = AnnValue::Star;

}  // namespace

TEST(Clause, CanonicalOrderAndDedup) {
    Clause c = make_clause({L(3), L(-1), L(3), L(2)});
    ASSERT_EQ(c.size(), 3u);
    EXPECT_EQ(c[0], L(-1));
    EXPECT_EQ(c[2], L(3));
    EXPECT_TRUE(clause_contains(c, L(2)));
    EXPECT_FALSE(clause_contains(c, L(-2)));
}

TEST(Clause, Tautology) {
    EXPECT_TRUE(is_tautological(make_clause({L(1), L(-1)})));
    EXPECT_FALSE(is_tautological(make_clause({L(1), S(1)})));
}

TEST(Qbf, IndicesFollowPrefix) {
    Qbf f = chain();
    EXPECT_EQ(f.index(1), 1);
    EXPECT_EQ(f.index(4), 4);
    EXPECT_TRUE(f.is_universal(2));
    EXPECT_TRUE(f.is_existential(5));
    EXPECT_EQ(f.max_id(), 5);
}

TEST(Qbf, RejectsUnboundAndTautological) {
    try {
        Qbf({{1, Quantifier::Exists}}, {make_clause({L(1), L(2)})});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::UnboundVariable);
    }
    try {
        Qbf({{1, Quantifier::Exists}}, {make_clause({L(1), L(-1)})});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::TautologicalClause);
    }
}

TEST(Qbf, MatrixSideOfPOnlyClauseIsA) {
    Qbf f({{1, Quantifier::Exists}, {2, Quantifier::Exists}, {3, Quantifier::Exists}},
          {make_clause({L(1)}), make_clause({L(1), L(2)}), make_clause({L(-1), L(3)})});
    f.set_partition({{1, Side::P}, {2, Side::Q}, {3, Side::R}});
    EXPECT_EQ(f.matrix_side(f.matrix()[0]), Side::Q);
    EXPECT_EQ(f.matrix_side(f.matrix()[1]), Side::Q);
    EXPECT_EQ(f.matrix_side(f.matrix()[2]), Side::R);
    EXPECT_NO_THROW(f.require_interpolation_shape());
}

TEST(Qbf, MixedClauseBreaksShape) {
    Qbf f({{1, Quantifier::Exists}, {2, Quantifier::Exists}, {3, Quantifier::Exists}},
          {make_clause({L(2), L(3)})});
    f.set_partition({{1, Side::P}, {2, Side::Q}, {3, Side::R}});
    try {
        f.require_interpolation_shape();
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NoPartition);
    }
}

TEST(Restrict, SatisfiedFalsifiedAndStar) {
    Clause c = make_clause({L(1), L(-2), S(4)});
    EXPECT_FALSE(restrict_clause(c, {{1, true}}).has_value());
    auto r = restrict_clause(c, {{1, false}, {2, true}});
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(*r, make_clause({S(4)}));
    try {
        restrict_clause(c, {{4, false}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::AssignToStar);
    }
}

TEST(Preceq, StarAbsorbsEitherPolarity) {
    Clause d = make_clause({L(1), S(2)});
    EXPECT_TRUE(preceq_clause(make_clause({L(2)}), d));
    EXPECT_TRUE(preceq_clause(make_clause({L(-2), L(1)}), d));
    EXPECT_TRUE(preceq_clause(make_clause({S(2)}), d));
    EXPECT_FALSE(preceq_clause(make_clause({S(2)}), make_clause({L(2)})));
    EXPECT_FALSE(preceq_clause(make_clause({L(3)}), d));
    EXPECT_TRUE(preceq_clause({}, d));
}

TEST(Preceq, Annotations) {
    EXPECT_TRUE(preceq_annotation(ann({{2, Z}}), ann({{2, X}})));
    EXPECT_TRUE(preceq_annotation(ann({{2, Z}}), ann({{2, Z}})));
    EXPECT_FALSE(preceq_annotation(ann({{2, X}}), ann({{2, O}})));
    EXPECT_FALSE(preceq_annotation(ann({{2, Z}}), ann({{2, O}})));
    EXPECT_FALSE(preceq_annotation(ann({{2, Z}}), ann({{2, Z}, {4, Z}})));
}

TEST(Preceq, AnnotatedNeedsInjection) {
    AnnotatedClause d = make_annotated_clause({{L(3), ann({{2, X}})}});
    AnnotatedClause two = make_annotated_clause({{L(3), ann({{2, Z}})}, {L(3), ann({{2, O}})}});
    EXPECT_TRUE(preceq_annotated(make_annotated_clause({{L(3), ann({{2, Z}})}}), d));
    EXPECT_FALSE(preceq_annotated(two, d));  // both copies cannot map to one
    EXPECT_TRUE(preceq_annotated(two, two));
}

TEST(Annotation, CompleteKeepsLeft) {
    Annotation c = complete(ann({{2, Z}}), ann({{2, O}, {4, O}}));
    EXPECT_EQ(c, ann({{2, Z}, {4, O}}));
}

TEST(Annotation, FilterDropsLaterUniversals) {
    Qbf f = chain();
    EXPECT_EQ(filter_annotation(f, L(3), ann({{2, Z}, {4, X}})), ann({{2, Z}}));
    EXPECT_EQ(filter_annotation(f, L(5), ann({{2, Z}, {4, X}})), ann({{2, Z}, {4, X}}));
    EXPECT_TRUE(filter_annotation(f, L(1), ann({{2, Z}})).empty());
}

TEST(Annotation, InstantiateCompletes) {
    Qbf f = chain();
    AnnotatedClause c = make_annotated_clause({{L(5), ann({{2, O}})}, {L(3), {}}});
    AnnotatedClause got = instantiate(f, ann({{2, Z}, {4, Z}}), c);
    AnnotatedClause want = make_annotated_clause({{L(3), ann({{2, Z}})}, {L(5), ann({{2, O}, {4, Z}})}});
    EXPECT_EQ(got, want);
}

TEST(Annotation, MergeStarsDisagreements) {
    EXPECT_EQ(merge_annotations(ann({{2, Z}, {4, O}}), ann({{2, O}, {4, O}})), ann({{2, X}, {4, O}}));
    EXPECT_TRUE(same_domain(ann({{2, Z}}), ann({{2, X}})));
    EXPECT_FALSE(range_is_binary(ann({{2, X}})));
}

TEST(Printing, Literals) {
    EXPECT_EQ(to_string(L(-3)), "-3");
    EXPECT_EQ(to_string(S(3)), "3*");
    EXPECT_EQ(to_string(AnnotatedLiteral{L(5), ann({{2, Z}, {4, X}})}), "5:2=0,4=*");
}
