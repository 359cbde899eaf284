#ifndef QBFI_FORMULA_GEN_HPP
#define QBFI_FORMULA_GEN_HPP

#include <map>
#include <string>

#include "qbfi/model.hpp"

namespace qbfi {

// Variable numbering of the clique-no-clique formula for a given n.
struct CliqueLayout {
    int n = 0;
    int k = 0;  // n/2

    int p(int u, int v) const;  // 1 ≤ u < v ≤ n
    int q(int i, int u) const;  // 1 ≤ i ≤ k, 1 ≤ u ≤ n
    int r1(int u) const;
    int lt() const;               // "fewer than k selectors set"
    int counter(int i, int j) const;  // sequential-counter register s_{i,j}, 1 ≤ i < n, 1 ≤ j < k
    int term(int u, int v) const;     // "u and v selected, p_uv = 0"
    int num_vars() const;
};

// ∃p ∃q ∀r1 ∃r2 [A(p,q) ∧ B(p,r1,r2)], partitioned p / q / r.
// Throws BAD_N unless n is even and n ≥ 2.
Qbf gen_clique_noclique(int n);

// Clause counts of the C/D/E/F families of gen_clique_noclique(n), read off
// the clauses by shape rather than by construction.
std::map<char, int> clique_family_counts(const Qbf& f, int n);

// Fresh universal b after the p block, b added to A-clauses, ¬b to B-clauses.
// Throws NO_PARTITION.
Qbf gen_fb(const Qbf& f);

}  // namespace qbfi

#endif  // QBFI_FORMULA_GEN_HPP
