#include "qbfi/circuit.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qbfi {

namespace {

struct KindInfo {
    GateKind kind;
    const char* name;
    bool has_var;
    int gate_args;
};

constexpr KindInfo kKinds[] = {
    {GateKind::Const0, "CONST0", false, 0}, {GateKind::Const1, "CONST1", false, 0},
    {GateKind::Input, "INPUT", true, 0},    {GateKind::Id, "ID", false, 1},
    {GateKind::Or2, "OR2", false, 2},       {GateKind::And2, "AND2", false, 2},
    {GateKind::Sel, "SEL", true, 2},        {GateKind::Mono3, "MONO3", true, 2},
};

const KindInfo& info(GateKind k) {
    for (const auto& i : kKinds)
        if (i.kind == k) return i;
    return kKinds[0];
}

std::size_t position(const Circuit& c, int id) {
    auto it = std::lower_bound(c.gates.begin(), c.gates.end(), id,
                               [](const Gate& g, int v) { return g.id < v; });
    if (it == c.gates.end() || it->id != id) return c.gates.size();
    return static_cast<std::size_t>(it - c.gates.begin());
}

}  // namespace

std::string to_string(GateKind k) { return info(k).name; }

const Gate& Circuit::gate(int id) const {
    std::size_t p = position(*this, id);
    if (p == gates.size()) throw Error(Errc::InternalInvariant, "no gate " + std::to_string(id));
    return gates[p];
}

bool Circuit::is_monotone_gate_set() const {
    return std::none_of(gates.begin(), gates.end(), [](const Gate& g) { return g.kind == GateKind::Sel; });
}

std::vector<bool> eval_gates(const Circuit& c, const Assignment& a) {
    for (int v : c.inputs)
        if (!a.count(v)) throw Error(Errc::PartialAssignment, "input " + std::to_string(v) + " unassigned");
    std::vector<bool> val(c.gates.size());
    auto arg = [&](int id) -> bool {
        std::size_t p = position(c, id);
        if (p == c.gates.size()) throw Error(Errc::InternalInvariant, "dangling gate " + std::to_string(id));
        return val[p];
    };
    auto input = [&](int v) -> bool {
        auto it = a.find(v);
        if (it == a.end()) throw Error(Errc::PartialAssignment, "variable " + std::to_string(v));
        return it->second;
    };
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const Gate& g = c.gates[i];
        switch (g.kind) {
        case GateKind::Const0: val[i] = false; break;
        case GateKind::Const1: val[i] = true; break;
        case GateKind::Input: val[i] = input(g.var); break;
        case GateKind::Id: val[i] = arg(g.a); break;
        case GateKind::Or2: val[i] = arg(g.a) || arg(g.b); break;
        case GateKind::And2: val[i] = arg(g.a) && arg(g.b); break;
        case GateKind::Sel: val[i] = input(g.var) ? arg(g.b) : arg(g.a); break;
        case GateKind::Mono3: val[i] = (input(g.var) || arg(g.a)) && arg(g.b); break;
        }
    }
    return val;
}

bool eval_circuit(const Circuit& c, const Assignment& a) {
    auto val = eval_gates(c, a);
    std::size_t p = position(c, c.output);
    if (p == c.gates.size()) throw Error(Errc::InternalInvariant, "output gate missing");
    return val[p];
}

std::string write_circuit(const Circuit& c) {
    std::ostringstream out;
    for (int v : c.inputs) out << "INPUT " << v << '\n';
    for (const Gate& g : c.gates) {
        const KindInfo& k = info(g.kind);
        out << "GATE " << g.id << ' ' << k.name;
        if (k.has_var) out << ' ' << g.var;
        if (k.gate_args >= 1) out << ' ' << g.a;
        if (k.gate_args >= 2) out << ' ' << g.b;
        out << '\n';
    }
    out << "OUTPUT " << c.output << '\n';
    return out.str();
}

Circuit read_circuit(std::string_view text) {
    Circuit c;
    std::set<int> inputs, seen;
    bool have_output = false;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string& msg) {
        throw Error(Errc::Syntax, "netlist line " + std::to_string(line_no) + ": " + msg);
    };
    auto integer = [&](std::istringstream& ls) {
        int v;
        if (!(ls >> v)) fail("expected integer");
        return v;
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word) || word[0] == '#') continue;
        if (word == "INPUT") {
            int v = integer(ls);
            if (v <= 0 || !inputs.insert(v).second) fail("bad or repeated input");
            c.inputs.push_back(v);
        } else if (word == "GATE") {
            Gate g;
            g.id = integer(ls);
            std::string kind;
            ls >> kind;
            const KindInfo* k = nullptr;
            for (const auto& i : kKinds)
                if (kind == i.name) k = &i;
            if (!k) fail("unknown gate kind '" + kind + "'");
            g.kind = k->kind;
            if (k->has_var) {
                g.var = integer(ls);
                if (!inputs.count(g.var)) fail("selector on non-input variable");
            }
            if (k->gate_args >= 1) g.a = integer(ls);
            if (k->gate_args >= 2) g.b = integer(ls);
            if ((k->gate_args >= 1 && !seen.count(g.a)) || (k->gate_args >= 2 && !seen.count(g.b)))
                fail("argument does not precede gate");
            if (!c.gates.empty() && g.id <= c.gates.back().id) fail("gate ids must increase");
            g.provenance = g.id;
            seen.insert(g.id);
            c.gates.push_back(g);
        } else if (word == "OUTPUT") {
            if (have_output) fail("second OUTPUT");
            c.output = integer(ls);
            if (!seen.count(c.output)) fail("unknown output gate");
            have_output = true;
        } else {
            fail("unknown directive '" + word + "'");
        }
        std::string extra;
        if (ls >> extra) fail("trailing tokens");
    }
    if (!have_output) throw Error(Errc::Syntax, "netlist has no OUTPUT");
    return c;
}

std::string circuit_to_dot(const Circuit& c) {
    std::ostringstream out;
    out << "digraph circuit {\n  rankdir=BT;\n";
    for (const Gate& g : c.gates) {
        const KindInfo& k = info(g.kind);
        out << "  g" << g.id << " [label=\"" << k.name;
        if (k.has_var) out << ' ' << g.var;
        out << "\\nstep " << g.provenance << "\"";
        if (g.id == c.output) out << ", shape=doublecircle";
        out << "];\n";
        if (k.gate_args >= 1) out << "  g" << g.a << " -> g" << g.id << ";\n";
        if (k.gate_args >= 2) out << "  g" << g.b << " -> g" << g.id << ";\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace qbfi
