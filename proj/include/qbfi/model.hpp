#ifndef QBFI_MODEL_HPP
#define QBFI_MODEL_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qbfi/error.hpp"

namespace qbfi {

enum class Quantifier : std::uint8_t { Exists, Forall };

// Role of a variable in the interpolation setting ∃p 𝒬q 𝒬r [A(p,q) ∧ B(p,r)].
// B marks the fresh universal inserted by the strategy transform.
enum class Side : std::uint8_t { None, P, Q, R, B };

struct Variable {
    int id = 0;
    Quantifier quantifier = Quantifier::Exists;
    int index = 0;  // 1-based position in the prefix
};

// STAR is the merged literal u* of long-distance steps.
enum class Polarity : std::uint8_t { Pos, Neg, Star };

struct Literal {
    int var = 0;
    Polarity polarity = Polarity::Pos;

    static Literal from_dimacs(int lit) {
        return {lit < 0 ? -lit : lit, lit < 0 ? Polarity::Neg : Polarity::Pos};
    }
    static Literal star(int var) { return {var, Polarity::Star}; }

    bool is_star() const { return polarity == Polarity::Star; }
    // Complement of a non-star literal.
    Literal negated() const {
        return {var, polarity == Polarity::Pos ? Polarity::Neg : Polarity::Pos};
    }

    auto operator<=>(const Literal&) const = default;
};

// Canonical clause: literals sorted by (var, polarity), no duplicates.
using Clause = std::vector<Literal>;

Clause make_clause(std::vector<Literal> lits);
bool clause_contains(const Clause& c, Literal l);
bool is_tautological(const Clause& c);
Clause clause_without(const Clause& c, std::span<const Literal> drop);

enum class AnnValue : std::uint8_t { Zero, One, Star };

// Partial assignment to universal variables, keyed by variable id.
using Annotation = std::map<int, AnnValue>;

struct AnnotatedLiteral {
    Literal literal;
    Annotation annotation;

    auto operator<=>(const AnnotatedLiteral&) const = default;
    bool operator==(const AnnotatedLiteral&) const = default;
};

// Canonical annotated clause: sorted by (literal, annotation), no duplicates.
using AnnotatedClause = std::vector<AnnotatedLiteral>;

AnnotatedClause make_annotated_clause(std::vector<AnnotatedLiteral> lits);

// Total or partial 0/1 assignment keyed by variable id.
using Assignment = std::map<int, bool>;

class Qbf {
public:
    Qbf() = default;

    // Builds a closed prenex QBF; indices are assigned from prefix order.
    // Throws UNBOUND_VARIABLE / TAUTOLOGICAL_CLAUSE / SYNTAX.
    Qbf(std::vector<std::pair<int, Quantifier>> prefix, std::vector<Clause> matrix);

    const std::vector<Variable>& prefix() const { return prefix_; }
    const std::vector<Clause>& matrix() const { return matrix_; }

    bool has_variable(int id) const;
    const Variable& variable(int id) const;
    int index(int id) const { return variable(id).index; }
    bool is_universal(int id) const { return variable(id).quantifier == Quantifier::Forall; }
    bool is_existential(int id) const { return !is_universal(id); }
    int max_id() const { return static_cast<int>(by_id_.size()) - 1; }

    bool has_partition() const { return has_partition_; }
    Side side(int id) const;
    void set_partition(const std::map<int, Side>& labels);
    // Variables with the given label, in prefix order.
    std::vector<int> variables_on(Side s) const;
    // Fresh universal of the strategy transform, 0 when absent.
    int b_variable() const;

    // Throws NO_PARTITION unless the partition labels every variable and has the
    // shape ∃p [∀b] 𝒬q 𝒬r with no matrix clause mixing q and r variables.
    void require_interpolation_shape() const;

    // Which half of the split matrix a clause belongs to: clauses mentioning a
    // q variable or the literal b go to A; r variables or ¬b go to B; p-only
    // clauses go to A.
    Side matrix_side(const Clause& c) const;

    bool operator==(const Qbf& other) const {
        return prefix_vars_equal(other) && matrix_ == other.matrix_ &&
               has_partition_ == other.has_partition_ && sides_ == other.sides_;
    }

private:
    bool prefix_vars_equal(const Qbf& other) const;

    std::vector<Variable> prefix_;
    std::vector<Clause> matrix_;
    std::vector<int> by_id_;  // id -> position in prefix_, -1 if absent
    bool has_partition_ = false;
    std::vector<Side> sides_;  // by id
};

// C|alpha. Returns nullopt when the clause is satisfied.
// Throws ASSIGN_TO_STAR if alpha assigns a variable occurring starred in c.
std::optional<Clause> restrict_clause(const Clause& c, const Assignment& alpha);

// Restriction of an annotated clause on unannotated (p) literals.
std::optional<AnnotatedClause> restrict_annotated(const AnnotatedClause& c,
                                                  const Assignment& alpha);

// C ⪯ D: weakening up to starring of universal literals.
bool preceq_clause(const Clause& c, const Clause& d);

// τ ⪯ σ: equal domains, each constant kept or turned into *, * stays *.
bool preceq_annotation(const Annotation& tau, const Annotation& sigma);

// C ⪯ D for annotated clauses: an injection sending each l^τ to some l^σ
// with τ ⪯ σ, found by maximum bipartite matching.
bool preceq_annotated(const AnnotatedClause& c, const AnnotatedClause& d);

// Completion τ∘μ: τ where defined, μ elsewhere.
Annotation complete(const Annotation& tau, const Annotation& mu);

// l^[σ]: keeps the entries of σ on universals with smaller index than l.
Annotation filter_annotation(const Qbf& f, Literal l, const Annotation& sigma);

// inst(τ, C) = { l^[σ∘τ] | l^σ ∈ C }.
AnnotatedClause instantiate(const Qbf& f, const Annotation& tau, const AnnotatedClause& c);

// Merge of two annotations with equal domain: agreeing entries kept, others *.
Annotation merge_annotations(const Annotation& mu, const Annotation& sigma);

bool same_domain(const Annotation& a, const Annotation& b);
bool range_is_binary(const Annotation& a);

std::string to_string(Side s);
std::string to_string(const Literal& l);
std::string to_string(const Clause& c);
std::string to_string(const Annotation& a);
std::string to_string(const AnnotatedLiteral& l);
std::string to_string(const AnnotatedClause& c);

}  // namespace qbfi

#endif  // QBFI_MODEL_HPP
