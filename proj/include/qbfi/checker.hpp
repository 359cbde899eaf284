#ifndef QBFI_CHECKER_HPP
#define QBFI_CHECKER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qbfi/trace.hpp"

namespace qbfi {

enum class Violation {
    NotAxiom,
    RedIndex,
    RedNotUniversal,
    RedMissing,
    PivotKind,
    PivotMissing,
    TautologyResolvent,
    StarPivot,
    UIndex,
    UShape,
    ExistentialClash,
    WrongConclusion,
    BadAxiomAnnotation,
    InstRange,
    PivotAnnotationMismatch,
    DomainsNotDisjoint,
    TauRange,
    MergeDomain,
    MergeSource,
    RuleNotInCalculus,
    NoEmptyRoot,
};

const char* label(Violation v);

// Thrown by the rule functions below when a side condition fails.
struct StepFailure {
    Violation violation;
    std::string detail;
};

struct StepCheck {
    std::optional<Violation> violation;
    std::string detail;

    bool ok() const { return !violation; }
};

// --- Rule functions --------------------------------------------------------
// Each computes the conclusion a rule instance must have, or throws
// StepFailure. The checker compares the stated conclusion against them.

// ∀-Red / ∀-Red*: drop `lit` from c.
Clause reduce_universal(const Qbf& f, const Clause& c, Literal lit, Calculus calc);

// Res instantiated as S∃R/S∀R/L∃R/L∀R per calculus. c1 holds `pivot`, c2 its complement.
Clause resolve_cdcl(const Qbf& f, const Clause& c1, const Clause& c2, Literal pivot, Calculus calc);

// {l^[τ] | l ∈ C existential}, τ = {0/u | u universal literal of C}.
AnnotatedClause expansion_axiom(const Qbf& f, const Clause& matrix_clause);

struct ExpansionPivot {
    AnnotatedLiteral pivot;                      // x^τ
    std::optional<AnnotatedLiteral> positive;   // x^{τ∪ξ} in the first antecedent
    std::optional<AnnotatedLiteral> negative;   // ¬x^{τ∪σ} in the second antecedent
};

// IR-calc and IRM-calc resolution.
AnnotatedClause resolve_expansion(const Qbf& f, const AnnotatedClause& c1, const AnnotatedClause& c2,
                                  const ExpansionPivot& pivot, Calculus calc);

// Merging of two copies of one literal; returns the conclusion.
AnnotatedClause merge_literals(const AnnotatedClause& c, const AnnotatedLiteral& merged,
                               const AnnotatedLiteral& src1, const AnnotatedLiteral& src2);

// --- Step and refutation checks ------------------------------------------

StepCheck check_step_cdcl(const ProofStep& step, const std::vector<const Clause*>& antecedents,
                          const Qbf& f, Calculus calc);

StepCheck check_step_expansion(const ProofStep& step,
                               const std::vector<const AnnotatedClause*>& antecedents, const Qbf& f,
                               Calculus calc);

struct CheckReport {
    bool valid = true;
    std::optional<std::pair<int, Violation>> first_failure;
    std::string detail;
    std::map<Rule, int> stats;
};

CheckReport check_refutation(const ProofTrace& trace, const Qbf& f);

// Side (Q for A, R for B) of the matrix clause an axiom step was drawn from.
Side axiom_side(const ProofStep& step, const Qbf& f);

enum class ClauseClass { QClause, RClause, Mixed };

std::string to_string(ClauseClass c);

// q-clause / r-clause labels of every step. Annotation variables are ignored;
// with allow_b, b may appear in q-clauses and ¬b in r-clauses.
// Throws NO_PARTITION.
std::map<int, ClauseClass> classify_clauses(const ProofTrace& trace, const Qbf& f,
                                            bool allow_b = false);

ClauseClass classify_clause(int step_id, const ProofTrace& trace, const Qbf& f);

}  // namespace qbfi

#endif  // QBFI_CHECKER_HPP
