#ifndef QBFI_INTERPOLATION_HPP
#define QBFI_INTERPOLATION_HPP

#include <map>
#include <optional>

#include "qbfi/checker.hpp"
#include "qbfi/circuit.hpp"
#include "qbfi/oracle.hpp"

namespace qbfi {

enum class ExtractMode { General, Monotone };

// One gate per proof step, gate id = step id. Throws NO_PARTITION,
// NOT_VERIFIED, P_NOT_POSITIVE (monotone), MIXED_PIVOT.
Circuit extract_circuit(const ProofTrace& trace, const Qbf& f, ExtractMode mode = ExtractMode::General);

struct RestrictedProof {
    Side side = Side::Q;  // Q: refutes A(a,q); R: refutes B(a,r)
    Qbf formula;          // the one-sided formula the trace refutes
    ProofTrace trace;
    std::map<int, std::optional<Line>> nodes;  // original step -> C'' (nullopt = pruned)
};

// One-sided refutation for assignment a over p, built from `trace` guided by
// the gate values of `circuit`. Throws INTERNAL_INVARIANT when a step of the
// construction fails.
RestrictedProof restrict_proof(const ProofTrace& trace, const Qbf& f, const Circuit& circuit,
                               const Assignment& a);

// All 2^|p| assignments; throws TOO_MANY_P_VARS above `cap`.
SeparationReport verify_interpolant(const Circuit& c, const Qbf& f, int cap = kDefaultPCap, int jobs = 1);

namespace detail {
Circuit build_circuit(const ProofTrace& trace, const Qbf& f, ExtractMode mode, bool strategy);
RestrictedProof restrict_with(const ProofTrace& trace, const Qbf& f, const Circuit& circuit,
                              const Assignment& a, bool strategy);
}  // namespace detail

}  // namespace qbfi

#endif  // QBFI_INTERPOLATION_HPP
