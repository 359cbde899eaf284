#ifndef QBFI_CIRCUIT_HPP
#define QBFI_CIRCUIT_HPP

#include <string>
#include <string_view>
#include <vector>

#include "qbfi/model.hpp"

namespace qbfi {

enum class GateKind { Const0, Const1, Input, Id, Or2, And2, Sel, Mono3 };

std::string to_string(GateKind k);

// SEL(v,a,b) = (¬v∧a)∨(v∧b);  MONO3(v,a,b) = (v∨a)∧b.
struct Gate {
    int id = 0;
    GateKind kind = GateKind::Const0;
    int var = 0;         // INPUT, SEL, MONO3
    int a = 0, b = 0;    // argument gate ids
    int provenance = 0;  // proof step the gate was built from

    bool operator==(const Gate&) const = default;
};

struct Circuit {
    std::vector<int> inputs;  // p variables, prefix order
    std::vector<Gate> gates;  // increasing ids, arguments first
    int output = 0;

    const Gate& gate(int id) const;
    bool is_monotone_gate_set() const;

    bool operator==(const Circuit&) const = default;
};

// Throws PARTIAL_ASSIGNMENT if an input is unassigned.
bool eval_circuit(const Circuit& c, const Assignment& a);

// Values of all gates, in gate order.
std::vector<bool> eval_gates(const Circuit& c, const Assignment& a);

// Netlist: INPUT <vid> / GATE <gid> <KIND> <args…> / OUTPUT <gid>.
std::string write_circuit(const Circuit& c);
Circuit read_circuit(std::string_view text);  // throws SYNTAX

std::string circuit_to_dot(const Circuit& c);

}  // namespace qbfi

#endif  // QBFI_CIRCUIT_HPP
