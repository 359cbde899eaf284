#include "qbfi/formula_gen.hpp"

#include <algorithm>

namespace qbfi {

namespace {

int pairs(int n) { return n * (n - 1) / 2; }

// Position of the pair u<v in lexicographic order, 0-based.
int pair_rank(int n, int u, int v) { return (u - 1) * n - u * (u - 1) / 2 + (v - u) - 1; }

}  // namespace

int CliqueLayout::p(int u, int v) const { return 1 + pair_rank(n, u, v); }
int CliqueLayout::q(int i, int u) const { return pairs(n) + (i - 1) * n + u; }
int CliqueLayout::r1(int u) const { return pairs(n) + k * n + u; }
int CliqueLayout::lt() const { return pairs(n) + k * n + n + 1; }
int CliqueLayout::counter(int i, int j) const { return lt() + (i - 1) * (k - 1) + j; }
int CliqueLayout::term(int u, int v) const { return lt() + (n - 1) * (k - 1) + 1 + pair_rank(n, u, v); }
int CliqueLayout::num_vars() const { return lt() + (n - 1) * (k - 1) + pairs(n); }

Qbf gen_clique_noclique(int n) {
    if (n < 2 || n % 2 != 0) throw Error(Errc::BadN, "n must be even and at least 2, got " + std::to_string(n));
    CliqueLayout L{n, n / 2};
    const int k = L.k;
    auto pos = [](int v) { return Literal{v, Polarity::Pos}; };
    auto neg = [](int v) { return Literal{v, Polarity::Neg}; };

    std::vector<Clause> m;
    // C_i
    for (int i = 1; i <= k; ++i) {
        Clause c;
        for (int u = 1; u <= n; ++u) c.push_back(pos(L.q(i, u)));
        m.push_back(c);
    }
    // D_{i,j,u}
    for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j)
            for (int u = 1; u <= n; ++u) m.push_back({neg(L.q(i, u)), neg(L.q(j, u))});
    // E_{i,u,v}
    for (int i = 1; i <= k; ++i)
        for (int u = 1; u <= n; ++u)
            for (int v = u + 1; v <= n; ++v) m.push_back({neg(L.q(i, u)), neg(L.q(i, v))});
    // F_{i,j,u,v}
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j) {
            if (i == j) continue;
            for (int u = 1; u <= n; ++u)
                for (int v = u + 1; v <= n; ++v)
                    m.push_back({neg(L.q(i, u)), neg(L.q(j, v)), pos(L.p(u, v))});
        }

    // B: lt ∨ ⋁ t_uv, with lt → at most k-1 selectors and t_uv → r1_u ∧ r1_v ∧ ¬p_uv.
    const Literal not_lt = neg(L.lt());
    auto guarded = [&](Clause c) {
        c.push_back(not_lt);
        m.push_back(std::move(c));
    };
    const int bound = k - 1;
    if (bound == 0) {
        for (int u = 1; u <= n; ++u) guarded({neg(L.r1(u))});
    } else {
        auto s = [&](int i, int j) { return L.counter(i, j); };
        guarded({neg(L.r1(1)), pos(s(1, 1))});
        for (int j = 2; j <= bound; ++j) guarded({neg(s(1, j))});
        for (int i = 2; i < n; ++i) {
            guarded({neg(L.r1(i)), pos(s(i, 1))});
            guarded({neg(s(i - 1, 1)), pos(s(i, 1))});
            for (int j = 2; j <= bound; ++j) {
                guarded({neg(L.r1(i)), neg(s(i - 1, j - 1)), pos(s(i, j))});
                guarded({neg(s(i - 1, j)), pos(s(i, j))});
            }
            guarded({neg(L.r1(i)), neg(s(i - 1, bound))});
        }
        guarded({neg(L.r1(n)), neg(s(n - 1, bound))});
    }
    Clause top{pos(L.lt())};
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) {
            int t = L.term(u, v);
            m.push_back({neg(t), pos(L.r1(u))});
            m.push_back({neg(t), pos(L.r1(v))});
            m.push_back({neg(t), neg(L.p(u, v))});
            top.push_back(pos(t));
        }
    m.push_back(top);

    std::vector<std::pair<int, Quantifier>> prefix;
    std::map<int, Side> sides;
    for (int v = 1; v <= L.num_vars(); ++v) {
        Quantifier qt = v >= L.r1(1) && v <= L.r1(n) ? Quantifier::Forall : Quantifier::Exists;
        prefix.emplace_back(v, qt);
        sides[v] = v <= pairs(n) ? Side::P : v < L.r1(1) ? Side::Q : Side::R;
    }
    Qbf f(std::move(prefix), std::move(m));
    f.set_partition(sides);
    return f;
}

std::map<char, int> clique_family_counts(const Qbf& f, int n) {
    CliqueLayout L{n, n / 2};
    std::map<char, int> counts{{'C', 0}, {'D', 0}, {'E', 0}, {'F', 0}};
    // q_{iu} -> (i, u)
    auto slot = [&](int var) { return std::pair{(var - L.q(1, 1)) / n + 1, (var - L.q(1, 1)) % n + 1}; };
    for (const Clause& c : f.matrix()) {
        if (f.matrix_side(c) != Side::Q) continue;
        std::vector<Literal> qs, ps;
        for (const Literal& l : c) (f.side(l.var) == Side::Q ? qs : ps).push_back(l);
        bool all_pos = std::all_of(qs.begin(), qs.end(), [](Literal l) { return l.polarity == Polarity::Pos; });
        bool all_neg = std::all_of(qs.begin(), qs.end(), [](Literal l) { return l.polarity == Polarity::Neg; });
        if (ps.empty() && all_pos && static_cast<int>(qs.size()) == n) {
            ++counts['C'];
        } else if (ps.empty() && all_neg && qs.size() == 2) {
            auto [i, u] = slot(qs[0].var);
            auto [j, v] = slot(qs[1].var);
            if (i != j && u == v) ++counts['D'];
            else if (i == j && u != v) ++counts['E'];
        } else if (ps.size() == 1 && ps[0].polarity == Polarity::Pos && all_neg && qs.size() == 2) {
            auto [i, u] = slot(qs[0].var);
            auto [j, v] = slot(qs[1].var);
            if (i != j && u != v) ++counts['F'];
        }
    }
    return counts;
}

Qbf gen_fb(const Qbf& f) {
    if (!f.has_partition()) throw Error(Errc::NoPartition, "Fb needs a partitioned formula");
    if (f.b_variable() != 0) throw Error(Errc::NoPartition, "formula already carries b");
    const int b = f.max_id() + 1;

    std::vector<std::pair<int, Quantifier>> prefix;
    std::map<int, Side> sides;
    bool placed = false;
    for (const Variable& v : f.prefix()) {
        if (!placed && f.side(v.id) != Side::P) {
            prefix.emplace_back(b, Quantifier::Forall);
            placed = true;
        }
        prefix.emplace_back(v.id, v.quantifier);
        sides[v.id] = f.side(v.id);
    }
    if (!placed) prefix.emplace_back(b, Quantifier::Forall);
    sides[b] = Side::B;

    std::vector<Clause> m;
    for (const Clause& c : f.matrix()) {
        Clause d = c;
        d.push_back({b, f.matrix_side(c) == Side::R ? Polarity::Neg : Polarity::Pos});
        m.push_back(make_clause(std::move(d)));
    }
    Qbf out(std::move(prefix), std::move(m));
    out.set_partition(sides);
    return out;
}

}  // namespace qbfi
