#include "qbfi/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <queue>
#include <set>
#include <thread>
#include <tuple>
#include <unordered_map>

namespace qbfi {

// ---------------------------------------------------------------------------
// eval_qbf

namespace {

using IntClause = std::vector<int>;

class Evaluator {
public:
    explicit Evaluator(const Qbf& f) : f_(f) {
        for (const Variable& v : f.prefix()) order_.push_back(v.id);
    }

    bool run(std::vector<IntClause> clauses) { return solve(0, std::move(clauses)); }

private:
    static constexpr std::size_t kMemoLimit = 1u << 21;

    int ind(int lit) const { return f_.index(std::abs(lit)); }
    bool universal(int lit) const { return f_.is_universal(std::abs(lit)); }

    static std::vector<IntClause> assign(const std::vector<IntClause>& cs, int lit) {
        std::vector<IntClause> out;
        out.reserve(cs.size());
        for (const IntClause& c : cs) {
            if (std::find(c.begin(), c.end(), lit) != c.end()) continue;
            IntClause d;
            for (int l : c)
                if (l != -lit) d.push_back(l);
            out.push_back(std::move(d));
        }
        return out;
    }

    // Universal reduction, unit propagation and pure literals.
    // Returns 0 (false), 1 (true) or -1 (undecided).
    int simplify(std::vector<IntClause>& cs) const {
        for (;;) {
            int unit = 0;
            for (IntClause& c : cs) {
                int max_e = 0;
                for (int l : c)
                    if (!universal(l)) max_e = std::max(max_e, ind(l));
                c.erase(std::remove_if(c.begin(), c.end(),
                                       [&](int l) { return universal(l) && ind(l) > max_e; }),
                        c.end());
                if (c.empty()) return 0;
                if (c.size() == 1 && !unit) unit = c[0];
            }
            if (cs.empty()) return 1;
            if (!unit) {
                std::map<int, int> seen;  // var -> bitmask of polarities
                for (const IntClause& c : cs)
                    for (int l : c) seen[std::abs(l)] |= l > 0 ? 1 : 2;
                for (auto& [v, mask] : seen) {
                    if (mask == 3) continue;
                    bool pos = mask == 1;
                    // existential: make the literal true; universal: make it false
                    unit = universal(v) == pos ? -v : v;
                    break;
                }
            }
            if (!unit) return -1;
            cs = assign(cs, unit);
        }
    }

    bool solve(std::size_t pos, std::vector<IntClause> cs) {
        int s = simplify(cs);
        if (s >= 0) return s == 1;

        for (IntClause& c : cs) std::sort(c.begin(), c.end());
        std::sort(cs.begin(), cs.end());
        cs.erase(std::unique(cs.begin(), cs.end()), cs.end());

        std::set<int> live;
        for (const IntClause& c : cs)
            for (int l : c) live.insert(std::abs(l));
        while (pos < order_.size() && !live.count(order_[pos])) ++pos;
        if (pos == order_.size()) throw Error(Errc::InternalInvariant, "evaluator ran out of variables");

        std::string key = std::to_string(pos);
        for (const IntClause& c : cs) {
            key += '|';
            for (int l : c) key += std::to_string(l) + ' ';
        }
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        int v = order_[pos];
        bool result;
        if (f_.is_universal(v)) result = solve(pos + 1, assign(cs, v)) && solve(pos + 1, assign(cs, -v));
        else result = solve(pos + 1, assign(cs, v)) || solve(pos + 1, assign(cs, -v));

        if (memo_.size() > kMemoLimit) memo_.clear();
        memo_.emplace(std::move(key), result);
        return result;
    }

    const Qbf& f_;
    std::vector<int> order_;
    std::unordered_map<std::string, bool> memo_;
};

}  // namespace

bool eval_qbf(const Qbf& f, const Assignment& partial, int cap) {
    int free_vars = 0;
    for (const Variable& v : f.prefix())
        if (!partial.count(v.id)) ++free_vars;
    if (free_vars > cap)
        throw Error(Errc::CapExceeded, std::to_string(free_vars) + " unassigned variables, cap " +
                                           std::to_string(cap));
    std::vector<IntClause> cs;
    for (const Clause& c : f.matrix()) {
        auto r = restrict_clause(c, partial);
        if (!r) continue;
        IntClause ic;
        for (const Literal& l : *r) ic.push_back(l.polarity == Polarity::Neg ? -l.var : l.var);
        cs.push_back(std::move(ic));
    }
    return Evaluator(f).run(std::move(cs));
}

// ---------------------------------------------------------------------------
// find_qres_refutation

namespace {

struct Node {
    Clause clause;
    Rule rule = Rule::Axiom;
    std::vector<int> ants;
    Literal aux;
};

struct Candidate {
    std::size_t size;
    std::uint64_t seq;
    int first, second;
    Literal pivot;
    Clause reduced;

    bool operator>(const Candidate& o) const { return std::tie(size, seq) > std::tie(o.size, o.seq); }
};

bool subsumes(const Clause& small, const Clause& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

std::optional<ProofTrace> find_qres_refutation(const Qbf& f, std::int64_t budget) {
    std::vector<Node> nodes;

    // Universal literals removable from c, innermost first.
    auto reducible = [&](const Clause& c) {
        int max_e = 0;
        for (const Literal& l : c)
            if (f.is_existential(l.var)) max_e = std::max(max_e, f.index(l.var));
        std::vector<Literal> out;
        for (const Literal& l : c)
            if (f.is_universal(l.var) && f.index(l.var) >= max_e) out.push_back(l);
        std::sort(out.begin(), out.end(),
                  [&](Literal x, Literal y) { return f.index(x.var) > f.index(y.var); });
        return out;
    };
    auto fully_reduced = [&](const Clause& c) {
        Clause out = c;
        auto drop = reducible(c);
        return clause_without(out, drop);
    };
    auto add_reduced = [&](int id) {
        for (Literal u : reducible(nodes[id].clause)) {
            const Literal drop[] = {u};
            nodes.push_back({clause_without(nodes[id].clause, drop), Rule::URed, {id}, u});
            id = static_cast<int>(nodes.size()) - 1;
        }
        return id;
    };

    std::vector<int> active;
    std::set<Clause> known;
    int empty = -1;

    auto emit = [&]() {
        std::vector<bool> keep(nodes.size());
        std::vector<int> stack{empty};
        while (!stack.empty()) {
            int n = stack.back();
            stack.pop_back();
            if (keep[n]) continue;
            keep[n] = true;
            for (int a : nodes[n].ants) stack.push_back(a);
        }
        ProofTrace t;
        t.calculus = Calculus::QRes;
        std::vector<int> new_id(nodes.size());
        int next = 1;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (!keep[i]) continue;
            new_id[i] = next;
            ProofStep s;
            s.id = next++;
            s.conclusion = nodes[i].clause;
            s.rule = nodes[i].rule;
            for (int a : nodes[i].ants) s.antecedents.push_back(new_id[a]);
            if (s.rule != Rule::Axiom) s.aux_literals.push_back({nodes[i].aux, {}});
            t.steps.push_back(std::move(s));
        }
        return t;
    };

    for (const Clause& c : f.matrix()) {
        if (known.count(fully_reduced(c))) continue;
        nodes.push_back({c, Rule::Axiom, {}, {}});
        int id = add_reduced(static_cast<int>(nodes.size()) - 1);
        known.insert(nodes[id].clause);
        active.push_back(id);
        if (nodes[id].clause.empty()) {
            empty = id;
            return emit();
        }
    }

    std::priority_queue<Candidate, std::vector<Candidate>, std::greater<>> queue;
    std::uint64_t seq = 0;
    std::int64_t generated = 0;

    auto pair_with = [&](int x, int y) {
        for (int round = 0; round < 2; ++round, std::swap(x, y)) {
            const Clause& cx = nodes[x].clause;
            const Clause& cy = nodes[y].clause;
            for (const Literal& l : cx) {
                if (!f.is_existential(l.var) || !clause_contains(cy, l.negated())) continue;
                const Literal dx[] = {l};
                const Literal dy[] = {l.negated()};
                Clause r = clause_without(cx, dx);
                Clause ry = clause_without(cy, dy);
                r.insert(r.end(), ry.begin(), ry.end());
                r = make_clause(std::move(r));
                if (is_tautological(r)) continue;
                Clause red = fully_reduced(r);
                if (known.count(red)) continue;
                ++generated;
                queue.push({red.size(), seq++, x, y, l, std::move(red)});
            }
            if (round == 0 && x == y) break;
        }
    };

    for (std::size_t i = 0; i < active.size(); ++i)
        for (std::size_t j = i + 1; j < active.size(); ++j) pair_with(active[i], active[j]);

    while (!queue.empty()) {
        if (generated > budget) return std::nullopt;
        Candidate cand = queue.top();
        queue.pop();
        if (known.count(cand.reduced)) continue;
        bool subsumed = std::any_of(active.begin(), active.end(),
                                    [&](int a) { return subsumes(nodes[a].clause, cand.reduced); });
        if (subsumed) continue;

        const Literal dx[] = {cand.pivot};
        const Literal dy[] = {cand.pivot.negated()};
        Clause r = clause_without(nodes[cand.first].clause, dx);
        Clause ry = clause_without(nodes[cand.second].clause, dy);
        r.insert(r.end(), ry.begin(), ry.end());
        nodes.push_back({make_clause(std::move(r)), Rule::Res, {cand.first, cand.second}, cand.pivot});
        int id = add_reduced(static_cast<int>(nodes.size()) - 1);
        known.insert(nodes[id].clause);
        if (nodes[id].clause.empty()) {
            empty = id;
            return emit();
        }
        for (int a : std::vector<int>(active)) pair_with(id, a);
        active.push_back(id);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Side formulas and separation checks

Qbf side_formula(const Qbf& f, Side side, const Assignment& a, bool keep_b) {
    if (!f.has_partition()) throw Error(Errc::NoPartition, "side formula needs a partition");
    std::vector<std::pair<int, Quantifier>> prefix;
    for (const Variable& v : f.prefix())
        if (f.side(v.id) == side || (keep_b && f.side(v.id) == Side::B))
            prefix.emplace_back(v.id, v.quantifier);
    std::vector<Clause> matrix;
    for (const Clause& c : f.matrix()) {
        if (f.matrix_side(c) != side) continue;
        Clause d;
        for (const Literal& l : c)
            if (keep_b || f.side(l.var) != Side::B) d.push_back(l);
        for (const Literal& l : d)
            if (f.side(l.var) == Side::P && !a.count(l.var))
                throw Error(Errc::PartialAssignment, "p variable " + std::to_string(l.var));
        auto r = restrict_clause(d, a);
        if (r) matrix.push_back(std::move(*r));
    }
    return Qbf(std::move(prefix), std::move(matrix));
}

std::vector<Assignment> p_assignments(const Qbf& f) {
    std::vector<int> p = f.variables_on(Side::P);
    std::vector<Assignment> out;
    std::size_t n = p.size();
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        Assignment a;
        for (std::size_t i = 0; i < n; ++i) a[p[i]] = (bits >> (n - 1 - i)) & 1;
        out.push_back(std::move(a));
    }
    return out;
}

namespace {

SeparationReport separation(const Circuit& c, const Qbf& f, int jobs, int eval_cap) {
    std::vector<Assignment> all = p_assignments(f);
    std::vector<signed char> verdict(all.size(), -1);  // -1 fine, else circuit value of a failure
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&]() {
        try {
            for (std::size_t i; (i = next++) < all.size();) {
                bool v = eval_circuit(c, all[i]);
                if (eval_qbf(side_formula(f, v ? Side::R : Side::Q, all[i]), {}, eval_cap))
                    verdict[i] = v;
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
            next = all.size();
        }
    };
    int n = std::max(1, std::min<int>(jobs, static_cast<int>(all.size())));
    std::vector<std::thread> pool;
    for (int i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);

    SeparationReport report;
    report.checked = all.size();
    for (std::size_t i = 0; i < all.size(); ++i)
        if (verdict[i] >= 0) report.counterexamples.push_back({all[i], verdict[i] == 1});
    return report;
}

}  // namespace

SeparationReport check_separation(const Circuit& c, const Qbf& f, int p_cap, int jobs, int eval_cap) {
    if (!f.has_partition()) throw Error(Errc::NoPartition, "formula carries no partition comment");
    auto p = f.variables_on(Side::P);
    if (static_cast<int>(p.size()) > p_cap)
        throw Error(Errc::TooManyPVars, std::to_string(p.size()) + " p variables, cap " + std::to_string(p_cap));
    return separation(c, f, jobs, eval_cap);
}

SeparationReport verify_b_strategy(const Circuit& strategy, const Qbf& f, int p_cap, int jobs,
                                   int eval_cap) {
    if (!f.has_partition()) throw Error(Errc::NoPartition, "formula carries no partition comment");
    if (f.b_variable() == 0) throw Error(Errc::BNotMarked, "partition marks no b variable");
    auto p = f.variables_on(Side::P);
    if (static_cast<int>(p.size()) > p_cap)
        throw Error(Errc::CapExceeded, std::to_string(p.size()) + " p variables, cap " + std::to_string(p_cap));
    return separation(strategy, f, jobs, eval_cap);
}

}  // namespace qbfi
