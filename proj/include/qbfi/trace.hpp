#ifndef QBFI_TRACE_HPP
#define QBFI_TRACE_HPP

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qbfi/model.hpp"

namespace qbfi {

// --- QDIMACS ---------------------------------------------------------------

// Parses standard QDIMACS plus the optional comment
//   c partition p: <ids> q: <ids> r: <ids> b: <id>
Qbf parse_qdimacs(std::string_view text);

// Canonical QDIMACS; the partition comment is emitted when present.
std::string write_qdimacs(const Qbf& f);

// --- Proof traces ----------------------------------------------------------

enum class Calculus { QRes, QURes, LDQRes, LQUPlus, IRCalc, IRMCalc };

enum class Rule { Axiom, URed, URedStar, Res, Inst, Merge };

bool is_expansion(Calculus c);
std::string to_string(Calculus c);
std::string to_string(Rule r);
Calculus parse_calculus(std::string_view name);

// A proof line: plain clause for the CDCL family, annotated for expansion.
using Line = std::variant<Clause, AnnotatedClause>;

bool is_empty_line(const Line& l);
std::string to_string(const Line& l);

struct ProofStep {
    int id = 0;
    Line conclusion;
    Rule rule = Rule::Axiom;
    std::vector<int> antecedents;
    // URED/URED*: the reduced literal.
    // RES: pivot literal (annotated by τ in expansion traces), optionally
    //      followed by the two pivot occurrences in the antecedents.
    // MERGE: merged literal, then the two source literals.
    std::vector<AnnotatedLiteral> aux_literals;
    // INST: the instantiating assignment.
    Annotation aux_annotation;

    bool operator==(const ProofStep&) const = default;
};

class ProofTrace {
public:
    Calculus calculus = Calculus::QRes;
    std::vector<ProofStep> steps;  // strictly increasing ids

    // The root is the last step.
    const ProofStep& root() const { return steps.back(); }
    // Position of a step id in `steps`, -1 if absent.
    int position(int id) const;
    const ProofStep& step(int id) const;

    bool operator==(const ProofTrace&) const = default;
};

// Step line grammar:  <id> <lit>… 0 <RULE> <ant>… 0 [<aux>… 0]
// Header:             s qrtf <calculus>
// Structure only; rule soundness is the checker's job.
ProofTrace parse_trace(std::string_view text, const Qbf& formula);

std::string write_trace(const ProofTrace& trace);

}  // namespace qbfi

#endif  // QBFI_TRACE_HPP
