#pragma once

// Frozen improvement cycles of the two counterexample families, written down
// as positions plus the own-color share behind each agent's payoff. A share of
// 1 encodes "alone with its color", whose reflected key is 0. Tests replay
// these rows against the generators; the rows are the oracle, not the code.

#include <vector>

#include "rsg/dynamics.hpp"
#include "rsg/game.hpp"

namespace rsg::testsupport {

struct TreeRow {
    const char* a1;
    const char* a2;
    const char* a3;
    Rational f1, f2, f3;  // own-color shares behind the three payoffs
};

// Six-profile cycle of the three mobile agents; row i steps to row i+1, the
// last row back to the first.
inline const std::vector<TreeRow>& tree_cycle_rows() {
    static const std::vector<TreeRow> rows{
        {"q1", "q3", "q4", Rational(1, 2), Rational(1, 3), Rational(1, 3)},
        {"q1", "q1", "q4", Rational(1, 3), Rational(2, 3), Rational(1, 3)},
        {"q2", "q1", "q4", Rational(1, 2), Rational(1), Rational(1, 3)},
        {"q2", "q3", "q4", Rational(1, 2), Rational(1, 3), Rational(1, 3)},
        {"q2", "q3", "q2", Rational(1, 3), Rational(1, 3), Rational(2, 3)},
        {"q1", "q3", "q2", Rational(1, 2), Rational(1, 3), Rational(1)},
    };
    return rows;
}

struct ChaserRow {
    const char* a1;
    const char* a2;
    Rational f1, f2;
};

// Four-profile cycle of the fleeing red agent and the chasing blue one.
inline std::vector<ChaserRow> chaser_cycle_rows(int d) {
    return {
        {"q1", "q1", Rational(1, d), Rational(d - 1, d)},
        {"q2", "q1", Rational(1, d - 1), Rational(1)},
        {"q2", "q2", Rational(1, d), Rational(d - 1, d)},
        {"q1", "q2", Rational(1, d - 1), Rational(1)},
    };
}

// Builds the full profile a row describes, pinned agents included.
template <typename Row>
StrategyProfile row_profile(const AccessibilityGraph& g, const Row& row) {
    StrategyProfile s;
    for (AgentId a = 0; a < g.num_agents(); ++a) s.choice.push_back(g.accessible(a)[0]);
    const auto put = [&](const char* agent, const char* resource) {
        s.choice[*g.find_agent(agent)] = *g.find_resource(resource);
    };
    put("a1", row.a1);
    put("a2", row.a2);
    if constexpr (requires { row.a3; }) put("a3", row.a3);
    return s;
}

}  // namespace rsg::testsupport
