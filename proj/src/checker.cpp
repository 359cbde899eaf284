#include "qbfi/checker.hpp"

#include <algorithm>

namespace qbfi {

const char* label(Violation v) {
    switch (v) {
    case Violation::NotAxiom: return "NOT_AXIOM";
    case Violation::RedIndex: return "RED_INDEX";
    case Violation::RedNotUniversal: return "RED_NOT_UNIVERSAL";
    case Violation::RedMissing: return "RED_MISSING";
    case Violation::PivotKind: return "PIVOT_KIND";
    case Violation::PivotMissing: return "PIVOT_MISSING";
    case Violation::TautologyResolvent: return "TAUTOLOGY_RESOLVENT";
    case Violation::StarPivot: return "STAR_PIVOT";
    case Violation::UIndex: return "U_INDEX";
    case Violation::UShape: return "U_SHAPE";
    case Violation::ExistentialClash: return "EXISTENTIAL_CLASH";
    case Violation::WrongConclusion: return "WRONG_CONCLUSION";
    case Violation::BadAxiomAnnotation: return "BAD_AXIOM_ANNOTATION";
    case Violation::InstRange: return "INST_RANGE";
    case Violation::PivotAnnotationMismatch: return "PIVOT_ANNOTATION_MISMATCH";
    case Violation::DomainsNotDisjoint: return "DOMAINS_NOT_DISJOINT";
    case Violation::TauRange: return "TAU_RANGE";
    case Violation::MergeDomain: return "MERGE_DOMAIN";
    case Violation::MergeSource: return "MERGE_SOURCE";
    case Violation::RuleNotInCalculus: return "RULE_NOT_IN_CALCULUS";
    case Violation::NoEmptyRoot: return "NO_EMPTY_ROOT";
    }
    return "UNKNOWN";
}

namespace {

[[noreturn]] void violate(Violation v, std::string detail) { throw StepFailure{v, std::move(detail)}; }

bool allows_universal_pivot(Calculus c) { return c == Calculus::QURes || c == Calculus::LQUPlus; }
bool allows_long_distance(Calculus c) { return c == Calculus::LDQRes || c == Calculus::LQUPlus; }

bool subset_of(const Annotation& small, const Annotation& big) {
    for (auto& [u, v] : small) {
        auto it = big.find(u);
        if (it == big.end() || it->second != v) return false;
    }
    return true;
}

Annotation minus(const Annotation& a, const Annotation& drop) {
    Annotation out;
    for (auto& [u, v] : a)
        if (!drop.count(u)) out.emplace(u, v);
    return out;
}

AnnotatedClause without(const AnnotatedClause& c, const AnnotatedLiteral& l) {
    AnnotatedClause out;
    for (const auto& x : c)
        if (!(x == l)) out.push_back(x);
    return out;
}

AnnotatedLiteral pick_occurrence(const AnnotatedClause& c, const AnnotatedLiteral& wanted,
                                 const std::optional<AnnotatedLiteral>& stated, bool exact,
                                 const char* which) {
    if (stated) {
        if (stated->literal != wanted.literal || !std::binary_search(c.begin(), c.end(), *stated) ||
            !subset_of(wanted.annotation, stated->annotation))
            violate(Violation::PivotAnnotationMismatch,
                    std::string(which) + " occurrence " + to_string(*stated) + " does not fit");
        if (exact && stated->annotation != wanted.annotation)
            violate(Violation::PivotAnnotationMismatch, "IR-calc pivots need identical annotations");
        return *stated;
    }
    if (std::none_of(c.begin(), c.end(), [&](const AnnotatedLiteral& x) { return x.literal == wanted.literal; }))
        violate(Violation::PivotMissing, std::string(which) + " antecedent lacks " + to_string(wanted.literal));
    std::vector<const AnnotatedLiteral*> hits;
    for (const auto& x : c)
        if (x.literal == wanted.literal &&
            (exact ? x.annotation == wanted.annotation : subset_of(wanted.annotation, x.annotation)))
            hits.push_back(&x);
    if (hits.size() != 1)
        violate(Violation::PivotAnnotationMismatch,
                std::string(which) + " antecedent has " + std::to_string(hits.size()) +
                    " candidate occurrences of " + to_string(wanted));
    return *hits.front();
}

}  // namespace

// ---------------------------------------------------------------------------
// CDCL rules

Clause reduce_universal(const Qbf& f, const Clause& c, Literal lit, Calculus calc) {
    if (!f.is_universal(lit.var)) violate(Violation::RedNotUniversal, to_string(lit));
    if (lit.is_star() && !allows_long_distance(calc))
        violate(Violation::RuleNotInCalculus, "merged literals need a long-distance calculus");
    if (!clause_contains(c, lit)) violate(Violation::RedMissing, to_string(lit) + " not in antecedent");
    Clause out;
    int u_index = f.index(lit.var);
    for (const Literal& l : c) {
        if (l == lit) continue;
        if (f.is_existential(l.var) && f.index(l.var) > u_index)
            violate(Violation::RedIndex, "existential " + to_string(l) + " right of " + to_string(lit));
        out.push_back(l);
    }
    return out;
}

Clause resolve_cdcl(const Qbf& f, const Clause& c1, const Clause& c2, Literal pivot, Calculus calc) {
    if (pivot.is_star()) violate(Violation::StarPivot, to_string(pivot));
    if (f.is_universal(pivot.var) && !allows_universal_pivot(calc))
        violate(Violation::PivotKind, "universal pivot " + to_string(pivot));
    if (!clause_contains(c1, pivot) || !clause_contains(c2, pivot.negated()))
        violate(Violation::PivotMissing, "pivot " + to_string(pivot));

    const bool long_distance = allows_long_distance(calc);
    const int pivot_index = f.index(pivot.var);
    const Literal drop1[] = {pivot};
    const Literal drop2[] = {pivot.negated()};
    Clause r1 = clause_without(c1, drop1);
    Clause r2 = clause_without(c2, drop2);

    std::vector<Literal> out;
    auto i = r1.begin(), j = r2.begin();
    while (i != r1.end() || j != r2.end()) {
        int var = j == r2.end() || (i != r1.end() && i->var < j->var) ? i->var : j->var;
        auto ie = i, je = j;
        while (ie != r1.end() && ie->var == var) ++ie;
        while (je != r2.end() && je->var == var) ++je;
        if (i == ie || j == je) {
            out.insert(out.end(), i, ie);
            out.insert(out.end(), j, je);
        } else if (ie - i == 1 && je - j == 1 && *i == *j && !i->is_star()) {
            out.push_back(*i);
        } else {
            const std::string where = "variable " + std::to_string(var);
            bool complementary = false;
            for (auto a = i; a != ie; ++a)
                for (auto b = j; b != je; ++b)
                    complementary |= !a->is_star() && !b->is_star() && *a == b->negated();
            if (f.is_existential(var)) {
                if (!long_distance && complementary) violate(Violation::TautologyResolvent, where);
                violate(Violation::ExistentialClash, where);
            }
            if (!long_distance) {
                if (complementary) violate(Violation::TautologyResolvent, where);
                violate(Violation::UShape, where + " would need merging");
            }
            for (auto a = i; a != ie; ++a)
                for (auto b = j; b != je; ++b)
                    if (!(*a == b->negated() || a->is_star() || b->is_star()))
                        violate(Violation::UShape, where);
            if (f.index(var) <= pivot_index) violate(Violation::UIndex, where + " left of pivot");
            out.push_back(Literal::star(var));
        }
        i = ie;
        j = je;
    }
    return make_clause(std::move(out));
}

// ---------------------------------------------------------------------------
// Expansion rules

AnnotatedClause expansion_axiom(const Qbf& f, const Clause& matrix_clause) {
    Annotation tau;
    for (const Literal& l : matrix_clause)
        if (f.is_universal(l.var))
            tau.emplace(l.var, l.polarity == Polarity::Pos ? AnnValue::Zero : AnnValue::One);
    std::vector<AnnotatedLiteral> out;
    for (const Literal& l : matrix_clause)
        if (f.is_existential(l.var)) out.push_back({l, filter_annotation(f, l, tau)});
    return make_annotated_clause(std::move(out));
}

AnnotatedClause resolve_expansion(const Qbf& f, const AnnotatedClause& c1, const AnnotatedClause& c2,
                                  const ExpansionPivot& pivot, Calculus calc) {
    const Annotation& tau = pivot.pivot.annotation;
    if (!range_is_binary(tau)) violate(Violation::TauRange, to_string(pivot.pivot));
    const bool ir = calc == Calculus::IRCalc;
    AnnotatedLiteral neg_wanted{pivot.pivot.literal.negated(), tau};
    AnnotatedLiteral pos = pick_occurrence(c1, pivot.pivot, pivot.positive, ir, "first");
    AnnotatedLiteral neg = pick_occurrence(c2, neg_wanted, pivot.negative, ir, "second");

    Annotation xi = minus(pos.annotation, tau);
    Annotation sigma = minus(neg.annotation, tau);
    for (auto& [u, v] : xi)
        if (sigma.count(u))
            violate(Violation::DomainsNotDisjoint, "both sides annotate " + std::to_string(u));

    AnnotatedClause left = instantiate(f, sigma, without(c1, pos));
    AnnotatedClause right = instantiate(f, xi, without(c2, neg));
    left.insert(left.end(), right.begin(), right.end());
    return make_annotated_clause(std::move(left));
}

AnnotatedClause merge_literals(const AnnotatedClause& c, const AnnotatedLiteral& merged,
                               const AnnotatedLiteral& src1, const AnnotatedLiteral& src2) {
    if (src1 == src2 || src1.literal != src2.literal || merged.literal != src1.literal ||
        !std::binary_search(c.begin(), c.end(), src1) || !std::binary_search(c.begin(), c.end(), src2))
        violate(Violation::MergeSource, to_string(src1) + " / " + to_string(src2));
    if (!same_domain(src1.annotation, src2.annotation))
        violate(Violation::MergeDomain, to_string(src1) + " / " + to_string(src2));
    AnnotatedLiteral expect{src1.literal, merge_annotations(src1.annotation, src2.annotation)};
    if (!(expect == merged))
        violate(Violation::WrongConclusion, "merge yields " + to_string(expect));
    AnnotatedClause out = without(without(c, src1), src2);
    out.push_back(expect);
    return make_annotated_clause(std::move(out));
}

// ---------------------------------------------------------------------------
// Step checks

StepCheck check_step_cdcl(const ProofStep& step, const std::vector<const Clause*>& ants, const Qbf& f,
                          Calculus calc) {
    const Clause* stated = std::get_if<Clause>(&step.conclusion);
    try {
        if (!stated || is_expansion(calc)) violate(Violation::RuleNotInCalculus, "not a CDCL step");
        Clause expect;
        switch (step.rule) {
        case Rule::Axiom:
            if (std::find(f.matrix().begin(), f.matrix().end(), *stated) == f.matrix().end())
                violate(Violation::NotAxiom, to_string(*stated));
            return {};
        case Rule::URed:
        case Rule::URedStar: {
            Literal lit = step.aux_literals.at(0).literal;
            if (lit.is_star() != (step.rule == Rule::URedStar))
                violate(lit.is_star() ? Violation::RuleNotInCalculus : Violation::RedMissing,
                        "rule and reduced literal disagree on starring");
            expect = reduce_universal(f, *ants.at(0), lit, calc);
            break;
        }
        case Rule::Res:
            expect = resolve_cdcl(f, *ants.at(0), *ants.at(1), step.aux_literals.at(0).literal, calc);
            break;
        default:
            violate(Violation::RuleNotInCalculus, to_string(step.rule) + " in " + to_string(calc));
        }
        if (expect != *stated) violate(Violation::WrongConclusion, "expected " + to_string(expect));
    } catch (const StepFailure& e) {
        return {e.violation, e.detail};
    }
    return {};
}

StepCheck check_step_expansion(const ProofStep& step, const std::vector<const AnnotatedClause*>& ants,
                               const Qbf& f, Calculus calc) {
    const AnnotatedClause* stated = std::get_if<AnnotatedClause>(&step.conclusion);
    try {
        if (!stated || !is_expansion(calc)) violate(Violation::RuleNotInCalculus, "not an expansion step");
        AnnotatedClause expect;
        switch (step.rule) {
        case Rule::Axiom: {
            bool same_literals = false;
            for (const Clause& c : f.matrix()) {
                AnnotatedClause ax = expansion_axiom(f, c);
                if (ax == *stated) return {};
                same_literals |= ax.size() == stated->size() &&
                                 std::equal(ax.begin(), ax.end(), stated->begin(),
                                            [](auto& a, auto& b) { return a.literal == b.literal; });
            }
            violate(same_literals ? Violation::BadAxiomAnnotation : Violation::NotAxiom,
                    to_string(*stated));
        }
        case Rule::Inst:
            if (!range_is_binary(step.aux_annotation))
                violate(Violation::InstRange, to_string(step.aux_annotation));
            expect = instantiate(f, step.aux_annotation, *ants.at(0));
            break;
        case Rule::Res: {
            ExpansionPivot pivot{step.aux_literals.at(0), {}, {}};
            if (step.aux_literals.size() == 3) {
                pivot.positive = step.aux_literals[1];
                pivot.negative = step.aux_literals[2];
            }
            expect = resolve_expansion(f, *ants.at(0), *ants.at(1), pivot, calc);
            break;
        }
        case Rule::Merge:
            if (calc != Calculus::IRMCalc) violate(Violation::RuleNotInCalculus, "merging needs IRM-calc");
            expect = merge_literals(*ants.at(0), step.aux_literals.at(0), step.aux_literals.at(1),
                                    step.aux_literals.at(2));
            break;
        default:
            violate(Violation::RuleNotInCalculus, to_string(step.rule) + " in " + to_string(calc));
        }
        if (expect != *stated) violate(Violation::WrongConclusion, "expected " + to_string(expect));
    } catch (const StepFailure& e) {
        return {e.violation, e.detail};
    }
    return {};
}

CheckReport check_refutation(const ProofTrace& trace, const Qbf& f) {
    CheckReport report;
    const bool expansion = is_expansion(trace.calculus);
    for (const ProofStep& step : trace.steps) {
        ++report.stats[step.rule];
        StepCheck r;
        if (expansion) {
            std::vector<const AnnotatedClause*> ants;
            for (int a : step.antecedents)
                ants.push_back(std::get_if<AnnotatedClause>(&trace.step(a).conclusion));
            r = check_step_expansion(step, ants, f, trace.calculus);
        } else {
            std::vector<const Clause*> ants;
            for (int a : step.antecedents) ants.push_back(std::get_if<Clause>(&trace.step(a).conclusion));
            r = check_step_cdcl(step, ants, f, trace.calculus);
        }
        if (!r.ok() && report.valid) {
            report.valid = false;
            report.first_failure = {step.id, *r.violation};
            report.detail = r.detail;
        }
    }
    if (report.valid && (trace.steps.empty() || !is_empty_line(trace.root().conclusion))) {
        report.valid = false;
        report.first_failure = {trace.steps.empty() ? 0 : trace.root().id, Violation::NoEmptyRoot};
        report.detail = "root does not conclude the empty clause";
    }
    return report;
}

// ---------------------------------------------------------------------------
// Classification

Side axiom_side(const ProofStep& step, const Qbf& f) {
    if (const Clause* c = std::get_if<Clause>(&step.conclusion)) return f.matrix_side(*c);
    const auto& stated = std::get<AnnotatedClause>(step.conclusion);
    for (const Clause& c : f.matrix())
        if (expansion_axiom(f, c) == stated) return f.matrix_side(c);
    return Side::Q;
}

std::string to_string(ClauseClass c) {
    switch (c) {
    case ClauseClass::QClause: return "Q_CLAUSE";
    case ClauseClass::RClause: return "R_CLAUSE";
    case ClauseClass::Mixed: return "MIXED";
    }
    return "?";
}

std::map<int, ClauseClass> classify_clauses(const ProofTrace& trace, const Qbf& f, bool allow_b) {
    if (!f.has_partition()) throw Error(Errc::NoPartition, "classification needs a partition");
    std::map<int, ClauseClass> label;
    std::map<int, unsigned> ancestors;  // bitmask over ClauseClass of all ancestors
    auto bit = [](ClauseClass c) { return 1u << static_cast<unsigned>(c); };

    for (const ProofStep& step : trace.steps) {
        unsigned mask = 0;
        for (int a : step.antecedents) mask |= ancestors[a] | bit(label[a]);
        ancestors[step.id] = mask;

        bool q = false, r = false, other = false;
        auto visit = [&](Literal l) {
            switch (f.side(l.var)) {
            case Side::Q: q = true; break;
            case Side::R: r = true; break;
            case Side::B:
                if (!allow_b || l.is_star()) other = true;
                else (l.polarity == Polarity::Pos ? q : r) = true;
                break;
            case Side::P: break;
            case Side::None: other = true; break;
            }
        };
        std::visit([&](const auto& c) {
            for (const auto& l : c) {
                if constexpr (std::is_same_v<std::decay_t<decltype(l)>, Literal>) visit(l);
                else visit(l.literal);
            }
        }, step.conclusion);

        ClauseClass cls;
        if (other || (q && r)) cls = ClauseClass::Mixed;
        else if (q) cls = ClauseClass::QClause;
        else if (r) cls = ClauseClass::RClause;
        else if (step.rule == Rule::Axiom)
            cls = axiom_side(step, f) == Side::R ? ClauseClass::RClause : ClauseClass::QClause;
        else if (mask == bit(ClauseClass::QClause)) cls = ClauseClass::QClause;
        else if (mask == bit(ClauseClass::RClause)) cls = ClauseClass::RClause;
        else cls = ClauseClass::Mixed;
        label[step.id] = cls;
    }
    return label;
}

ClauseClass classify_clause(int step_id, const ProofTrace& trace, const Qbf& f) {
    auto labels = classify_clauses(trace, f);
    auto it = labels.find(step_id);
    if (it == labels.end()) throw Error(Errc::ForwardReference, "no step " + std::to_string(step_id));
    return it->second;
}

}  // namespace qbfi
