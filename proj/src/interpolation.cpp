#include "qbfi/interpolation.hpp"

#include <algorithm>
#include <functional>

namespace qbfi {

// ---------------------------------------------------------------------------
// Circuit extraction

namespace detail {

Circuit build_circuit(const ProofTrace& trace, const Qbf& f, ExtractMode mode, bool strategy) {
    if (!f.has_partition()) throw Error(Errc::NoPartition, "formula carries no partition comment");
    if (strategy && f.b_variable() == 0) throw Error(Errc::BNotMarked, "partition marks no b variable");
    f.require_interpolation_shape();

    CheckReport report = check_refutation(trace, f);
    if (!report.valid)
        throw Error(Errc::NotVerified, "step " + std::to_string(report.first_failure->first) + ": " +
                                           label(report.first_failure->second) + " " + report.detail);

    if (mode == ExtractMode::Monotone)
        for (const Clause& c : f.matrix()) {
            if (f.matrix_side(c) != Side::Q) continue;
            for (const Literal& l : c)
                if (f.side(l.var) == Side::P && l.polarity == Polarity::Neg)
                    throw Error(Errc::PNotPositive, to_string(l) + " in A-clause " + to_string(c));
        }

    Circuit circuit;
    circuit.inputs = f.variables_on(Side::P);
    for (const ProofStep& s : trace.steps) {
        Gate g;
        g.id = s.id;
        g.provenance = s.id;
        switch (s.rule) {
        case Rule::Axiom:
            g.kind = axiom_side(s, f) == Side::R ? GateKind::Const1 : GateKind::Const0;
            break;
        case Rule::URed:
        case Rule::URedStar:
        case Rule::Inst:
        case Rule::Merge:
            g.kind = GateKind::Id;
            g.a = s.antecedents[0];
            break;
        case Rule::Res: {
            const Literal pivot = s.aux_literals.at(0).literal;
            switch (f.side(pivot.var)) {
            case Side::P: {
                bool first_positive = pivot.polarity == Polarity::Pos;
                g.kind = mode == ExtractMode::Monotone ? GateKind::Mono3 : GateKind::Sel;
                g.var = pivot.var;
                g.a = s.antecedents[first_positive ? 0 : 1];
                g.b = s.antecedents[first_positive ? 1 : 0];
                break;
            }
            case Side::Q:
                g.kind = GateKind::Or2;
                g.a = s.antecedents[0];
                g.b = s.antecedents[1];
                break;
            case Side::R:
                g.kind = GateKind::And2;
                g.a = s.antecedents[0];
                g.b = s.antecedents[1];
                break;
            case Side::B:
                if (!strategy)
                    throw Error(Errc::MixedPivot, "step " + std::to_string(s.id) + " resolves on b");
                g.kind = GateKind::Id;
                g.a = s.antecedents[0];
                break;
            case Side::None:
                throw Error(Errc::MixedPivot, "step " + std::to_string(s.id) + " pivot is unlabeled");
            }
            break;
        }
        }
        circuit.gates.push_back(g);
    }
    circuit.output = trace.root().id;
    return circuit;
}

}  // namespace detail

Circuit extract_circuit(const ProofTrace& trace, const Qbf& f, ExtractMode mode) {
    return detail::build_circuit(trace, f, mode, false);
}

SeparationReport verify_interpolant(const Circuit& c, const Qbf& f, int cap, int jobs) {
    return check_separation(c, f, cap, jobs);
}

// ---------------------------------------------------------------------------
// Restricted proofs

namespace {

// Antecedent of a derivation step inside one node's plan: the final clause
// of another node, or an earlier step of the same plan.
struct Ref {
    bool local = false;
    int index = 0;  // node position, or step index within the plan
};

struct Micro {
    Rule rule = Rule::Axiom;
    std::vector<Ref> refs;
    std::vector<AnnotatedLiteral> aux;
    Annotation aux_annotation;
    Line conclusion;
};

struct Plan {
    Line clause;               // C'
    std::optional<int> alias;  // node position whose derivation is reused
    std::vector<Micro> steps;
};

[[noreturn]] void invariant(int step, const std::string& what) {
    throw Error(Errc::InternalInvariant, "step " + std::to_string(step) + ": " + what);
}

std::optional<Line> restrict_line(const Line& l, const Assignment& a) {
    if (const Clause* c = std::get_if<Clause>(&l)) {
        auto r = restrict_clause(*c, a);
        if (!r) return std::nullopt;
        return Line{std::move(*r)};
    }
    auto r = restrict_annotated(std::get<AnnotatedClause>(l), a);
    if (!r) return std::nullopt;
    return Line{std::move(*r)};
}

class Restrictor {
public:
    Restrictor(const ProofTrace& trace, const Qbf& f, const Circuit& circuit, const Assignment& a,
               bool strategy)
        : trace_(trace), f_(f), circuit_(circuit), a_(a), strategy_(strategy),
          expansion_(is_expansion(trace.calculus)), b_(f.b_variable()) {}

    RestrictedProof run() {
        if (circuit_.gates.size() != trace_.steps.size())
            throw Error(Errc::InternalInvariant, "circuit does not match the proof");
        for (std::size_t i = 0; i < trace_.steps.size(); ++i)
            if (circuit_.gates[i].id != trace_.steps[i].id)
                throw Error(Errc::InternalInvariant, "circuit does not match the proof");
        for (int p : f_.variables_on(Side::P))
            if (!a_.count(p)) throw Error(Errc::PartialAssignment, "p variable " + std::to_string(p));
        Assignment a_p;
        for (int p : f_.variables_on(Side::P)) a_p[p] = a_.at(p);
        a_ = a_p;
        value_ = eval_gates(circuit_, a_);

        for (std::size_t i = 0; i < trace_.steps.size(); ++i) {
            plans_.push_back(plan(static_cast<int>(i)));
            check_node(static_cast<int>(i));
        }

        RestrictedProof out;
        const int root = static_cast<int>(trace_.steps.size()) - 1;
        out.side = value_[root] ? Side::R : Side::Q;
        out.trace.calculus = trace_.calculus;
        emitted_.assign(trace_.steps.size(), 0);
        restricted_.assign(trace_.steps.size(), std::nullopt);
        int last = emit(root, out.trace);

        Line final = *restricted_[root];
        if (strategy_ && !expansion_) {
            const Clause& c = std::get<Clause>(final);
            if (c.size() == 1 && c[0].var == b_) {
                ProofStep s;
                s.id = static_cast<int>(out.trace.steps.size()) + 1;
                s.conclusion = Clause{};
                s.rule = Rule::URed;
                s.antecedents = {last};
                s.aux_literals = {{c[0], {}}};
                out.trace.steps.push_back(std::move(s));
                final = Clause{};
            }
        }
        if (!is_empty_line(final)) invariant(trace_.root().id, "restricted root is " + to_string(final));

        for (std::size_t i = 0; i < trace_.steps.size(); ++i) out.nodes[trace_.steps[i].id] = restricted_[i];
        out.formula = side_formula(f_, out.side, a_, strategy_);
        return out;
    }

private:
    int pos(int id) const { return trace_.position(id); }
    const ProofStep& step(int p) const { return trace_.steps[p]; }
    const Clause& cc(int p) const { return std::get<Clause>(plans_[p].clause); }
    const AnnotatedClause& ac(int p) const { return std::get<AnnotatedClause>(plans_[p].clause); }

    Plan alias(int p) const { return Plan{plans_[p].clause, p, {}}; }

    // --- per-node construction -------------------------------------------

    Plan plan(int u) {
        const ProofStep& s = step(u);
        switch (s.rule) {
        case Rule::Axiom: return Plan{s.conclusion, std::nullopt, {Micro{Rule::Axiom, {}, {}, {}, s.conclusion}}};
        case Rule::URed:
        case Rule::URedStar: return plan_reduction(u);
        case Rule::Inst: {
            int v = pos(s.antecedents[0]);
            return minst(u, s.aux_annotation, v, std::get<AnnotatedClause>(s.conclusion));
        }
        case Rule::Merge: return plan_merge(u);
        case Rule::Res: break;
        }
        const Literal pivot = s.aux_literals[0].literal;
        const Gate& g = circuit_.gates[u];
        switch (f_.side(pivot.var)) {
        case Side::P: return plan_p(g);
        case Side::B: return alias(pos(g.a));
        case Side::Q: return expansion_ ? plan_qr_expansion(u, true) : plan_qr_cdcl(u, true);
        case Side::R: return expansion_ ? plan_qr_expansion(u, false) : plan_qr_cdcl(u, false);
        case Side::None: break;
        }
        invariant(s.id, "unlabeled pivot");
    }

    Plan plan_reduction(int u) {
        const ProofStep& s = step(u);
        int v = pos(s.antecedents[0]);
        int x = s.aux_literals[0].literal.var;
        Plan out{plans_[v].clause, std::nullopt, {}};
        Clause c = cc(v);
        for (Literal l : {Literal{x, Polarity::Pos}, Literal{x, Polarity::Neg}, Literal::star(x)}) {
            if (!clause_contains(c, l)) continue;
            const Literal drop[] = {l};
            c = clause_without(c, drop);
            Ref r = out.steps.empty() ? Ref{false, v} : Ref{true, static_cast<int>(out.steps.size()) - 1};
            out.steps.push_back(Micro{l.is_star() ? Rule::URedStar : Rule::URed, {r}, {{l, {}}}, {}, c});
        }
        if (out.steps.empty()) return alias(v);
        out.clause = c;
        return out;
    }

    Plan plan_p(const Gate& g) {
        const int x = g.var;
        const int v = pos(g.a), w = pos(g.b);
        const bool xv = a_.at(x);
        bool take_w = xv;
        if (g.kind == GateKind::Mono3) take_w = xv || (value_[v] && !value_[w]);
        const int chosen = take_w ? w : v;
        Literal drop{x, take_w ? Polarity::Neg : Polarity::Pos};
        Plan out = alias(chosen);
        if (expansion_) {
            AnnotatedClause c;
            for (const auto& l : ac(chosen))
                if (!(l.literal == drop && l.annotation.empty())) c.push_back(l);
            out.clause = c;
        } else {
            const Literal d[] = {drop};
            out.clause = clause_without(cc(chosen), d);
        }
        return out;
    }

    Plan plan_qr_cdcl(int u, bool q_side) {
        const ProofStep& s = step(u);
        const bool want = q_side;  // gate value that lets the OR/AND gate copy a parent
        const int v = pos(s.antecedents[0]), w = pos(s.antecedents[1]);
        const Literal l = s.aux_literals[0].literal;
        if (value_[v] == want) return alias(v);
        if (value_[w] == want) return alias(w);
        if (!clause_contains(cc(v), l)) return alias(v);
        if (!clause_contains(cc(w), l.negated())) return alias(w);
        Clause r;
        try {
            r = resolve_cdcl(f_, cc(v), cc(w), l, trace_.calculus);
        } catch (const StepFailure& e) {
            invariant(s.id, std::string("resolution in the restricted proof fails: ") + label(e.violation) +
                                " " + e.detail);
        }
        return Plan{r, std::nullopt, {Micro{Rule::Res, {{false, v}, {false, w}}, {{l, {}}}, {}, r}}};
    }

    static Annotation zero_stars(const Annotation& a) {
        Annotation out = a;
        for (auto& [u, val] : out)
            if (val == AnnValue::Star) val = AnnValue::Zero;
        return out;
    }

    static Annotation minus(const Annotation& a, const Annotation& drop) {
        Annotation out;
        for (auto& [u, val] : a)
            if (!drop.count(u)) out.emplace(u, val);
        return out;
    }

    // Occurrence of `lit` in c extending tau: the stated one, or the unique match.
    static AnnotatedLiteral occurrence(const AnnotatedClause& c, const AnnotatedLiteral& wanted,
                                       const std::vector<AnnotatedLiteral>& aux, std::size_t k) {
        if (aux.size() == 3) return aux[k];
        for (const auto& x : c)
            if (x.literal == wanted.literal &&
                std::all_of(wanted.annotation.begin(), wanted.annotation.end(), [&](const auto& e) {
                    auto it = x.annotation.find(e.first);
                    return it != x.annotation.end() && it->second == e.second;
                }))
                return x;
        return wanted;
    }

    // Merges duplicate literals of `c` until it fits under `target`.
    // Appends MERGE steps; false when stuck.
    bool merge_until(AnnotatedClause& c, const AnnotatedClause& target, std::vector<Micro>& steps,
                     std::optional<Ref> first) const {
        while (!preceq_annotated(c, target)) {
            bool merged = false;
            for (std::size_t i = 0; i < c.size() && !merged; ++i)
                for (std::size_t j = i + 1; j < c.size() && !merged; ++j) {
                    const auto &x = c[i], &y = c[j];
                    if (x.literal != y.literal || !same_domain(x.annotation, y.annotation)) continue;
                    bool common = std::any_of(target.begin(), target.end(), [&](const AnnotatedLiteral& t) {
                        return t.literal == x.literal && preceq_annotation(x.annotation, t.annotation) &&
                               preceq_annotation(y.annotation, t.annotation);
                    });
                    if (!common) continue;
                    AnnotatedLiteral m{x.literal, merge_annotations(x.annotation, y.annotation)};
                    AnnotatedLiteral src1 = x, src2 = y;
                    c = merge_literals(c, m, src1, src2);
                    Ref r = steps.empty() && first ? *first : Ref{true, static_cast<int>(steps.size()) - 1};
                    steps.push_back(Micro{Rule::Merge, {r}, {m, src1, src2}, {}, c});
                    merged = true;
                }
            if (!merged) return false;
        }
        return true;
    }

    // Instantiate C'_v by tau, then merge until the result fits under target.
    Plan minst(int u, const Annotation& tau, int v, const AnnotatedClause& target) {
        Plan out{plans_[v].clause, std::nullopt, {}};
        AnnotatedClause c = instantiate(f_, tau, ac(v));
        if (c != ac(v)) out.steps.push_back(Micro{Rule::Inst, {{false, v}}, {}, tau, c});
        if (!merge_until(c, target, out.steps, Ref{false, v}))
            invariant(step(u).id, "minst cannot reach " + to_string(target) + " from " + to_string(c));
        if (out.steps.empty()) return alias(v);
        out.clause = c;
        return out;
    }

    Plan plan_merge(int u) {
        const ProofStep& s = step(u);
        const int v = pos(s.antecedents[0]);
        const auto& target = std::get<AnnotatedClause>(s.conclusion);
        const AnnotatedLiteral& mu = s.aux_literals[1];
        const AnnotatedLiteral& sigma = s.aux_literals[2];
        const AnnotatedClause& c = ac(v);
        for (const auto& x : c) {
            if (x.literal != mu.literal || !preceq_annotation(x.annotation, mu.annotation)) continue;
            for (const auto& y : c) {
                if (x == y || y.literal != sigma.literal || !preceq_annotation(y.annotation, sigma.annotation))
                    continue;
                AnnotatedLiteral m{x.literal, merge_annotations(x.annotation, y.annotation)};
                AnnotatedClause r;
                try {
                    r = merge_literals(c, m, x, y);
                } catch (const StepFailure&) {
                    continue;
                }
                if (!preceq_annotated(r, target)) continue;
                return Plan{r, std::nullopt, {Micro{Rule::Merge, {{false, v}}, {m, x, y}, {}, r}}};
            }
        }
        if (preceq_annotated(c, target)) return alias(v);
        invariant(s.id, "no merge of " + to_string(c) + " fits under " + to_string(target));
    }

    Plan plan_qr_expansion(int u, bool q_side) {
        const ProofStep& s = step(u);
        const bool want = q_side;
        const int v = pos(s.antecedents[0]), w = pos(s.antecedents[1]);
        const auto& cv = std::get<AnnotatedClause>(step(v).conclusion);
        const auto& cw = std::get<AnnotatedClause>(step(w).conclusion);
        const auto& target = std::get<AnnotatedClause>(s.conclusion);
        const AnnotatedLiteral& piv = s.aux_literals[0];
        const Annotation& tau = piv.annotation;
        AnnotatedLiteral occ1 = occurrence(cv, piv, s.aux_literals, 1);
        AnnotatedLiteral occ2 = occurrence(cw, {piv.literal.negated(), tau}, s.aux_literals, 2);
        const Annotation xi0 = zero_stars(minus(occ1.annotation, tau));
        const Annotation sigma0 = zero_stars(minus(occ2.annotation, tau));

        if (value_[v] == want) return minst(u, sigma0, v, target);
        if (value_[w] == want) return minst(u, xi0, w, target);

        auto matches = [](const AnnotatedClause& c, Literal lit, const Annotation& bound) {
            std::vector<AnnotatedLiteral> out;
            for (const auto& x : c)
                if (x.literal == lit && preceq_annotation(x.annotation, bound)) out.push_back(x);
            return out;
        };
        auto in_v = matches(ac(v), piv.literal, occ1.annotation);
        if (in_v.empty()) return minst(u, sigma0, v, target);
        auto in_w = matches(ac(w), piv.literal.negated(), occ2.annotation);
        if (in_w.empty()) return minst(u, xi0, w, target);

        for (const auto& o1 : in_v)
            for (const auto& o2 : in_w) {
                AnnotatedClause r;
                try {
                    r = resolve_expansion(f_, ac(v), ac(w), ExpansionPivot{piv, o1, o2}, trace_.calculus);
                } catch (const StepFailure&) {
                    continue;
                }
                Plan out{r, std::nullopt, {}};
                out.steps.push_back(Micro{Rule::Res, {{false, v}, {false, w}}, {piv, o1, o2}, {}, r});
                if (!merge_until(r, target, out.steps, std::nullopt)) continue;
                out.clause = r;
                return out;
            }
        invariant(s.id, "no resolution of the restricted parents fits under " + to_string(target));
    }

    // --- invariants -----------------------------------------------------

    void check_node(int u) const {
        const ProofStep& s = step(u);
        const Plan& p = plans_[u];
        if (expansion_) {
            if (!preceq_annotated(ac(u), std::get<AnnotatedClause>(s.conclusion)))
                invariant(s.id, "C' = " + to_string(p.clause) + " is not below " + to_string(s.conclusion));
            return;
        }
        Clause c;
        for (const Literal& l : cc(u)) {
            if (strategy_ && l.var == b_) {
                if (l.is_star()) invariant(s.id, "b* in C'");
                continue;
            }
            c.push_back(l);
        }
        if (!preceq_clause(c, std::get<Clause>(s.conclusion)))
            invariant(s.id, "C' = " + to_string(p.clause) + " is not below " + to_string(s.conclusion));
    }

    void check_class(int u, const Line& c) const {
        const bool r_side = value_[u];
        auto ok = [&](Literal l) {
            Side sd = f_.side(l.var);
            if (sd == (r_side ? Side::R : Side::Q)) return true;
            return strategy_ && sd == Side::B &&
                   l.polarity == (r_side ? Polarity::Neg : Polarity::Pos);
        };
        bool good = std::visit([&](const auto& cl) {
            for (const auto& l : cl) {
                if constexpr (std::is_same_v<std::decay_t<decltype(l)>, Literal>) {
                    if (!ok(l)) return false;
                } else if (!ok(l.literal)) {
                    return false;
                }
            }
            return true;
        }, c);
        if (!good)
            invariant(step(u).id, "C'' = " + to_string(c) + " is not a" + (r_side ? "n r" : " q") + "-clause");
    }

    // --- emission -------------------------------------------------------

    int emit(int u, ProofTrace& out) {
        if (emitted_[u]) return emitted_[u];
        const Plan& p = plans_[u];
        auto mine = restrict_line(p.clause, a_);
        if (!mine) invariant(step(u).id, "C' is satisfied by the assignment");
        int id;
        if (p.alias) {
            id = emit(*p.alias, out);
            if (*restricted_[*p.alias] != *mine)
                invariant(step(u).id, "copied clause " + to_string(*restricted_[*p.alias]) +
                                          " differs from " + to_string(*mine));
        } else {
            std::vector<int> local;
            for (const Micro& m : p.steps) {
                ProofStep ps;
                for (const Ref& r : m.refs) ps.antecedents.push_back(r.local ? local.at(r.index) : emit(r.index, out));
                auto concl = restrict_line(m.conclusion, a_);
                if (!concl) invariant(step(u).id, "derived clause is satisfied by the assignment");
                ps.id = static_cast<int>(out.steps.size()) + 1;
                ps.conclusion = *concl;
                ps.rule = m.rule;
                ps.aux_literals = m.aux;
                ps.aux_annotation = m.aux_annotation;
                out.steps.push_back(std::move(ps));
                local.push_back(out.steps.back().id);
            }
            id = local.back();
            if (out.steps.back().conclusion != *mine) invariant(step(u).id, "plan does not end in C'");
        }
        check_class(u, *mine);
        restricted_[u] = *mine;
        emitted_[u] = id;
        return id;
    }

    const ProofTrace& trace_;
    const Qbf& f_;
    const Circuit& circuit_;
    Assignment a_;
    const bool strategy_;
    const bool expansion_;
    const int b_;
    std::vector<bool> value_;
    std::vector<Plan> plans_;
    std::vector<int> emitted_;
    std::vector<std::optional<Line>> restricted_;
};

}  // namespace

namespace detail {

RestrictedProof restrict_with(const ProofTrace& trace, const Qbf& f, const Circuit& circuit,
                              const Assignment& a, bool strategy) {
    return Restrictor(trace, f, circuit, a, strategy).run();
}

}  // namespace detail

RestrictedProof restrict_proof(const ProofTrace& trace, const Qbf& f, const Circuit& circuit,
                               const Assignment& a) {
    return detail::restrict_with(trace, f, circuit, a, false);
}

}  // namespace qbfi
