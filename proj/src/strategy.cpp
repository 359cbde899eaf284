#include "qbfi/strategy.hpp"

namespace qbfi {

Circuit extract_b_strategy(const ProofTrace& trace, const Qbf& fb, ExtractMode mode) {
    return detail::build_circuit(trace, fb, mode, true);
}

RestrictedProof restrict_proof_fb(const ProofTrace& trace, const Qbf& fb, const Circuit& strategy,
                                  const Assignment& a) {
    if (fb.b_variable() == 0) throw Error(Errc::BNotMarked, "partition marks no b variable");
    return detail::restrict_with(trace, fb, strategy, a, true);
}

}  // namespace qbfi
