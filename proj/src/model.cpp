#include "qbfi/model.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace qbfi {

const char* label(Errc code) {
    switch (code) {
    case Errc::Syntax: return "SYNTAX";
    case Errc::TautologicalClause: return "TAUTOLOGICAL_CLAUSE";
    case Errc::UnboundVariable: return "UNBOUND_VARIABLE";
    case Errc::BadArity: return "BAD_ARITY";
    case Errc::ForwardReference: return "FORWARD_REFERENCE";
    case Errc::AnnotationInCdclTrace: return "ANNOTATION_IN_CDCL_TRACE";
    case Errc::StarInExpansionLiteral: return "STAR_IN_EXPANSION_LITERAL";
    case Errc::AssignToStar: return "ASSIGN_TO_STAR";
    case Errc::NoPartition: return "NO_PARTITION";
    case Errc::NotVerified: return "NOT_VERIFIED";
    case Errc::PNotPositive: return "P_NOT_POSITIVE";
    case Errc::MixedPivot: return "MIXED_PIVOT";
    case Errc::BNotMarked: return "B_NOT_MARKED";
    case Errc::InternalInvariant: return "INTERNAL_INVARIANT";
    case Errc::TooManyPVars: return "TOO_MANY_P_VARS";
    case Errc::CapExceeded: return "CAP_EXCEEDED";
    case Errc::PartialAssignment: return "PARTIAL_ASSIGNMENT";
    case Errc::BadN: return "BAD_N";
    }
    return "UNKNOWN";
}

Clause make_clause(std::vector<Literal> lits) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    return lits;
}

bool clause_contains(const Clause& c, Literal l) {
    return std::binary_search(c.begin(), c.end(), l);
}

bool is_tautological(const Clause& c) {
    for (const Literal& l : c)
        if (l.polarity == Polarity::Pos && clause_contains(c, l.negated())) return true;
    return false;
}

Clause clause_without(const Clause& c, std::span<const Literal> drop) {
    Clause out;
    out.reserve(c.size());
    for (const Literal& l : c)
        if (std::find(drop.begin(), drop.end(), l) == drop.end()) out.push_back(l);
    return out;
}

AnnotatedClause make_annotated_clause(std::vector<AnnotatedLiteral> lits) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    return lits;
}

// ---------------------------------------------------------------------------
// Qbf

Qbf::Qbf(std::vector<std::pair<int, Quantifier>> prefix, std::vector<Clause> matrix) {
    int max_id = 0;
    for (auto& [id, q] : prefix) {
        if (id <= 0) throw Error(Errc::Syntax, "variable id must be positive, got " + std::to_string(id));
        max_id = std::max(max_id, id);
    }
    by_id_.assign(static_cast<std::size_t>(max_id) + 1, -1);
    for (auto& [id, q] : prefix) {
        if (by_id_[id] != -1)
            throw Error(Errc::Syntax, "variable " + std::to_string(id) + " quantified twice");
        by_id_[id] = static_cast<int>(prefix_.size());
        prefix_.push_back({id, q, static_cast<int>(prefix_.size()) + 1});
    }
    sides_.assign(by_id_.size(), Side::None);
    matrix_.reserve(matrix.size());
    for (auto& c : matrix) {
        Clause canon = make_clause(std::move(c));
        for (const Literal& l : canon) {
            if (!has_variable(l.var)) throw Error(Errc::UnboundVariable, std::to_string(l.var));
            if (l.is_star()) throw Error(Errc::Syntax, "merged literal in matrix");
        }
        if (is_tautological(canon)) throw Error(Errc::TautologicalClause, to_string(canon));
        matrix_.push_back(std::move(canon));
    }
}

bool Qbf::has_variable(int id) const {
    return id > 0 && id < static_cast<int>(by_id_.size()) && by_id_[id] >= 0;
}

const Variable& Qbf::variable(int id) const {
    if (!has_variable(id)) throw Error(Errc::UnboundVariable, std::to_string(id));
    return prefix_[by_id_[id]];
}

Side Qbf::side(int id) const {
    if (!has_variable(id)) return Side::None;
    return sides_[id];
}

void Qbf::set_partition(const std::map<int, Side>& labels) {
    for (auto& [id, s] : labels) {
        if (!has_variable(id)) throw Error(Errc::UnboundVariable, std::to_string(id));
        sides_[id] = s;
    }
    has_partition_ = true;
}

std::vector<int> Qbf::variables_on(Side s) const {
    std::vector<int> out;
    for (const Variable& v : prefix_)
        if (sides_[v.id] == s) out.push_back(v.id);
    return out;
}

int Qbf::b_variable() const {
    for (const Variable& v : prefix_)
        if (sides_[v.id] == Side::B) return v.id;
    return 0;
}

void Qbf::require_interpolation_shape() const {
    if (!has_partition_) throw Error(Errc::NoPartition, "formula carries no partition comment");
    bool seen_non_p = false;
    int b_count = 0;
    for (const Variable& v : prefix_) {
        Side s = sides_[v.id];
        switch (s) {
        case Side::None:
            throw Error(Errc::NoPartition, "variable " + std::to_string(v.id) + " is unlabeled");
        case Side::P:
            if (v.quantifier != Quantifier::Exists)
                throw Error(Errc::NoPartition, "p variable " + std::to_string(v.id) + " is universal");
            if (seen_non_p)
                throw Error(Errc::NoPartition, "p variable " + std::to_string(v.id) + " follows a q/r variable");
            break;
        case Side::B:
            if (v.quantifier != Quantifier::Forall)
                throw Error(Errc::NoPartition, "b variable must be universal");
            if (seen_non_p || ++b_count > 1)
                throw Error(Errc::NoPartition, "b must directly follow the p block");
            seen_non_p = true;
            break;
        default:
            seen_non_p = true;
        }
    }
    for (const Clause& c : matrix_) {
        bool q = false, r = false;
        for (const Literal& l : c) {
            q |= sides_[l.var] == Side::Q;
            r |= sides_[l.var] == Side::R;
            if (sides_[l.var] == Side::B) {
                q |= l.polarity == Polarity::Pos;
                r |= l.polarity == Polarity::Neg;
            }
        }
        if (q && r) throw Error(Errc::NoPartition, "clause " + to_string(c) + " mixes q and r");
    }
}

Side Qbf::matrix_side(const Clause& c) const {
    for (const Literal& l : c) {
        Side s = side(l.var);
        if (s == Side::Q) return Side::Q;
        if (s == Side::R) return Side::R;
        if (s == Side::B) return l.polarity == Polarity::Neg ? Side::R : Side::Q;
    }
    return Side::Q;
}

bool Qbf::prefix_vars_equal(const Qbf& other) const {
    if (prefix_.size() != other.prefix_.size()) return false;
    for (std::size_t i = 0; i < prefix_.size(); ++i)
        if (prefix_[i].id != other.prefix_[i].id ||
            prefix_[i].quantifier != other.prefix_[i].quantifier)
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Clause operations

std::optional<Clause> restrict_clause(const Clause& c, const Assignment& alpha) {
    Clause out;
    for (const Literal& l : c) {
        auto it = alpha.find(l.var);
        if (it == alpha.end()) {
            out.push_back(l);
            continue;
        }
        if (l.is_star()) throw Error(Errc::AssignToStar, to_string(l));
        bool value = l.polarity == Polarity::Pos ? it->second : !it->second;
        if (value) return std::nullopt;
    }
    return out;
}

std::optional<AnnotatedClause> restrict_annotated(const AnnotatedClause& c,
                                                  const Assignment& alpha) {
    AnnotatedClause out;
    for (const AnnotatedLiteral& al : c) {
        auto it = alpha.find(al.literal.var);
        if (it == alpha.end()) {
            out.push_back(al);
            continue;
        }
        bool value = al.literal.polarity == Polarity::Pos ? it->second : !it->second;
        if (value) return std::nullopt;
    }
    return out;
}

bool preceq_clause(const Clause& c, const Clause& d) {
    for (const Literal& l : c) {
        if (l.is_star()) {
            if (!clause_contains(d, l)) return false;
        } else if (!clause_contains(d, l) && !clause_contains(d, Literal::star(l.var))) {
            return false;
        }
    }
    return true;
}

bool preceq_annotation(const Annotation& tau, const Annotation& sigma) {
    if (!same_domain(tau, sigma)) return false;
    for (auto& [u, c] : tau) {
        AnnValue s = sigma.at(u);
        if (c == AnnValue::Star ? s != AnnValue::Star : (s != c && s != AnnValue::Star)) return false;
    }
    return true;
}

bool preceq_annotated(const AnnotatedClause& c, const AnnotatedClause& d) {
    if (c.size() > d.size()) return false;
    std::vector<std::vector<int>> adj(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j)
            if (c[i].literal == d[j].literal && preceq_annotation(c[i].annotation, d[j].annotation))
                adj[i].push_back(static_cast<int>(j));

    std::vector<int> match_d(d.size(), -1);
    std::vector<char> visited;
    std::function<bool(int)> augment = [&](int i) {
        for (int j : adj[i]) {
            if (visited[j]) continue;
            visited[j] = 1;
            if (match_d[j] < 0 || augment(match_d[j])) {
                match_d[j] = i;
                return true;
            }
        }
        return false;
    };
    for (std::size_t i = 0; i < c.size(); ++i) {
        visited.assign(d.size(), 0);
        if (!augment(static_cast<int>(i))) return false;
    }
    return true;
}

Annotation complete(const Annotation& tau, const Annotation& mu) {
    Annotation out = tau;
    for (auto& [u, v] : mu) out.emplace(u, v);  // emplace keeps τ's entry
    return out;
}

Annotation filter_annotation(const Qbf& f, Literal l, const Annotation& sigma) {
    Annotation out;
    int limit = f.index(l.var);
    for (auto& [u, v] : sigma)
        if (f.index(u) < limit) out.emplace(u, v);
    return out;
}

AnnotatedClause instantiate(const Qbf& f, const Annotation& tau, const AnnotatedClause& c) {
    std::vector<AnnotatedLiteral> out;
    out.reserve(c.size());
    for (const AnnotatedLiteral& al : c)
        out.push_back({al.literal, filter_annotation(f, al.literal, complete(al.annotation, tau))});
    return make_annotated_clause(std::move(out));
}

Annotation merge_annotations(const Annotation& mu, const Annotation& sigma) {
    Annotation out;
    for (auto& [u, c] : mu) {
        auto it = sigma.find(u);
        out.emplace(u, it != sigma.end() && it->second == c ? c : AnnValue::Star);
    }
    return out;
}

bool same_domain(const Annotation& a, const Annotation& b) {
    if (a.size() != b.size()) return false;
    for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib)
        if (ia->first != ib->first) return false;
    return true;
}

bool range_is_binary(const Annotation& a) {
    return std::none_of(a.begin(), a.end(), [](auto& e) { return e.second == AnnValue::Star; });
}

// ---------------------------------------------------------------------------
// Printing

std::string to_string(Side s) {
    switch (s) {
    case Side::P: return "p";
    case Side::Q: return "q";
    case Side::R: return "r";
    case Side::B: return "b";
    case Side::None: break;
    }
    return "-";
}

std::string to_string(const Literal& l) {
    switch (l.polarity) {
    case Polarity::Pos: return std::to_string(l.var);
    case Polarity::Neg: return "-" + std::to_string(l.var);
    case Polarity::Star: return std::to_string(l.var) + "*";
    }
    return "?";
}

std::string to_string(const Clause& c) {
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? " " : "") + to_string(c[i]);
    return s + ")";
}

std::string to_string(const Annotation& a) {
    std::string s;
    for (auto& [u, v] : a) {
        if (!s.empty()) s += ',';
        s += std::to_string(u) + '=' + (v == AnnValue::Zero ? '0' : v == AnnValue::One ? '1' : '*');
    }
    return s;
}

std::string to_string(const AnnotatedLiteral& l) {
    std::string s = to_string(l.literal);
    if (!l.annotation.empty()) s += ":" + to_string(l.annotation);
    return s;
}

std::string to_string(const AnnotatedClause& c) {
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? " " : "") + to_string(c[i]);
    return s + ")";
}

}  // namespace qbfi
