#include <gtest/gtest.h>

#include <random>

#include "qbfi/circuit.hpp"

using namespace qbfi;

namespace {

// x is input 1; a and b are the inputs 2 and 3 seen through ID gates
Circuit three(GateKind top) {
    Circuit c;
    c.inputs = {1, 2, 3};
    c.gates = {{1, GateKind::Input, 2, 0, 0, 1},
               {2, GateKind::Input, 3, 0, 0, 2},
               {3, top, 1, 1, 2, 3}};
    c.output = 3;
    return c;
}

Circuit random_circuit(std::mt19937& rng, int inputs, int gates) {
    Circuit c;
    for (int v = 1; v <= inputs; ++v) c.inputs.push_back(v);
    std::uniform_int_distribution<int> kind(0, 7), var(1, inputs);
    for (int id = 1; id <= gates; ++id) {
        Gate g{id, static_cast<GateKind>(kind(rng)), 0, 0, 0, id};
        std::uniform_int_distribution<int> prev(1, std::max(1, id - 1));
        if (id == 1 && g.kind != GateKind::Const0 && g.kind != GateKind::Const1) g.kind = GateKind::Input;
        switch (g.kind) {
        case GateKind::Const0:
        case GateKind::Const1: break;
        case GateKind::Input: g.var = var(rng); break;
        case GateKind::Id: g.a = prev(rng); break;
        case GateKind::Or2:
        case GateKind::And2:
            g.a = prev(rng);
            g.b = prev(rng);
            break;
        case GateKind::Sel:
        case GateKind::Mono3:
            g.var = var(rng);
            g.a = prev(rng);
            g.b = prev(rng);
            break;
        }
        c.gates.push_back(g);
    }
    c.output = gates;
    return c;
}

}  // namespace

TEST(Gates, Mono3Table) {
    Circuit c = three(GateKind::Mono3);
    for (int x = 0; x < 2; ++x)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                EXPECT_EQ(eval_circuit(c, {{1, x == 1}, {2, a == 1}, {3, b == 1}}), (x || a) && b);
    EXPECT_FALSE(eval_circuit(c, {{1, false}, {2, true}, {3, false}}));
}

TEST(Gates, SelPicksAOnZero) {
    Circuit c = three(GateKind::Sel);
    for (int x = 0; x < 2; ++x)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                EXPECT_EQ(eval_circuit(c, {{1, x == 1}, {2, a == 1}, {3, b == 1}}), x ? b == 1 : a == 1);
}

TEST(Gates, AndOrConst) {
    EXPECT_TRUE(eval_circuit(three(GateKind::Or2), {{1, false}, {2, false}, {3, true}}));
    EXPECT_FALSE(eval_circuit(three(GateKind::And2), {{1, true}, {2, false}, {3, true}}));
    Circuit k;
    k.gates = {{1, GateKind::Const1, 0, 0, 0, 1}};
    k.output = 1;
    EXPECT_TRUE(eval_circuit(k, {}));
}

TEST(Gates, MissingInputThrows) {
    try {
        eval_circuit(three(GateKind::Sel), {{1, true}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::PartialAssignment);
    }
}

TEST(Gates, MonotoneSet) {
    EXPECT_TRUE(three(GateKind::Mono3).is_monotone_gate_set());
    EXPECT_FALSE(three(GateKind::Sel).is_monotone_gate_set());
}

TEST(Netlist, RandomRoundTrip) {
    std::mt19937 rng(7);
    for (int round = 0; round < 200; ++round) {
        Circuit c = random_circuit(rng, 1 + round % 5, 1 + round % 17);
        Circuit back = read_circuit(write_circuit(c));
        ASSERT_EQ(back, c) << write_circuit(c);
        Assignment a;
        for (int v : c.inputs) a[v] = (round >> (v % 4)) & 1;
        EXPECT_EQ(eval_gates(back, a), eval_gates(c, a));
    }
}

TEST(Netlist, Malformed) {
    auto code = [](const char* text) {
        try {
            read_circuit(text);
        } catch (const Error& e) {
            return e.code();
        }
        return Errc::InternalInvariant;
    };
    EXPECT_EQ(code("INPUT 1\nGATE 1 NAND 1\nOUTPUT 1\n"), Errc::Syntax);
    EXPECT_EQ(code("INPUT 1\nGATE 1 ID 2\nGATE 2 CONST0\nOUTPUT 1\n"), Errc::Syntax);
    EXPECT_EQ(code("INPUT 1\nGATE 1 CONST0\nGATE 2 SEL 9 1 1\nOUTPUT 2\n"), Errc::Syntax);
    EXPECT_EQ(code("INPUT 1\nGATE 1 CONST0\n"), Errc::Syntax);
    EXPECT_EQ(code("INPUT 1\nGATE 2 CONST0\nGATE 1 CONST1\nOUTPUT 1\n"), Errc::Syntax);
}

TEST(Netlist, DotMentionsSteps) {
    std::string dot = circuit_to_dot(three(GateKind::Sel));
    EXPECT_NE(dot.find("digraph"), std::string::npos);
    EXPECT_NE(dot.find("step 3"), std::string::npos);
}
