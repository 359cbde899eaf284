#ifndef QBFI_ORACLE_HPP
#define QBFI_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "qbfi/circuit.hpp"
#include "qbfi/trace.hpp"

namespace qbfi {

constexpr int kDefaultEvalCap = 28;
constexpr int kDefaultPCap = 20;

// Game-tree evaluation in prefix order. `partial` fixes some variables up front.
// Throws CAP_EXCEEDED when more than `cap` variables remain unassigned.
bool eval_qbf(const Qbf& f, const Assignment& partial = {}, int cap = kDefaultEvalCap);

// Saturation search for a Q-Res refutation. nullopt once `budget` resolvents
// have been generated without reaching the empty clause.
std::optional<ProofTrace> find_qres_refutation(const Qbf& f, std::int64_t budget);

// 𝒬q.A(a,q) (side Q) or 𝒬r.B(a,r) (side R): that half of the matrix with b
// literals dropped, restricted by a, quantified by its own block of the prefix.
// A clause falsified by a stays in as the empty clause. With keep_b the b
// literals and the ∀b quantifier stay.
Qbf side_formula(const Qbf& f, Side side, const Assignment& a, bool keep_b = false);

// All 2^|p| assignments to the p variables, in binary counting order over
// the prefix order of p (first p variable is the most significant bit).
std::vector<Assignment> p_assignments(const Qbf& f);

struct Counterexample {
    Assignment a;
    bool value = false;  // circuit output; the side it blames is still true
};

struct SeparationReport {
    std::size_t checked = 0;
    std::vector<Counterexample> counterexamples;

    bool ok() const { return counterexamples.empty(); }
};

// Checks c(a)=0 ⟹ A-side false and c(a)=1 ⟹ B-side false for every a.
// Throws TOO_MANY_P_VARS above `p_cap`.
SeparationReport check_separation(const Circuit& c, const Qbf& f, int p_cap = kDefaultPCap,
                                  int jobs = 1, int eval_cap = kDefaultEvalCap);

// The same test for a strategy of b on Fᵇ; throws B_NOT_MARKED, CAP_EXCEEDED.
SeparationReport verify_b_strategy(const Circuit& strategy, const Qbf& f, int p_cap = kDefaultPCap,
                                   int jobs = 1, int eval_cap = kDefaultEvalCap);

}  // namespace qbfi

#endif  // QBFI_ORACLE_HPP
