#ifndef QBFI_STRATEGY_HPP
#define QBFI_STRATEGY_HPP

#include "qbfi/interpolation.hpp"

namespace qbfi {

// Strategy circuit σ(p) for b from a refutation of Fᵇ. Same gate table as
// extract_circuit except that a resolution on b copies its first antecedent.
// Throws as extract_circuit, plus B_NOT_MARKED.
Circuit extract_b_strategy(const ProofTrace& trace, const Qbf& fb, ExtractMode mode = ExtractMode::General);

// restrict_proof for Fᵇ: b and ¬b may survive in the restricted clauses, and
// the refutation may end with one reduction of b.
RestrictedProof restrict_proof_fb(const ProofTrace& trace, const Qbf& fb, const Circuit& strategy,
                                  const Assignment& a);

}  // namespace qbfi

#endif  // QBFI_STRATEGY_HPP
