#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rsg/game.hpp"

namespace rsg {

// Two hub resources of degree d. A single red agent a1 reaches both; each hub
// additionally holds one blue and d-2 red pinned agents. Exactly two feasible
// profiles; below the increasing-regime bound L(d) the mobile agent oscillates
// forever under impact-blind dynamics.
AccessibilityGraph gen_no_ibe(int d);

// The 13-vertex tree (4 resources, 9 agents, all resource degrees 3) on which
// impact-aware dynamics cycle for every peak in (1/2, 1). Mobile agents:
// a1 red {q1,q2}, a2 blue {q1,q3}, a3 blue {q2,q4}; pinned: b1 blue {q1},
// b2 blue {q2}, two reds on each of q3 and q4.
AccessibilityGraph gen_no_iae_binary_tree();

// Two hub resources of degree d >= 4 with d-2 pinned blue agents each, plus a
// mobile red a1 and a mobile blue a2 reaching both. Co-located they sit at
// fractions 1/d and (d-1)/d; separated at 1/(d-1) and 1. For peaks above the
// decreasing-regime bound U(d) (up to 1/2) the pair chases in a 4-move cycle.
AccessibilityGraph gen_no_iae_chaser(int d);

// Alternating cycle of m resources and m agents; agent i reaches resources i
// and i+1 (mod m), every resource has degree 2.
AccessibilityGraph gen_cycle(int m, const std::vector<Color>& colors);
AccessibilityGraph gen_cycle(int m, std::uint64_t seed);  // fair coin colors

// Random tree over alternating agent/resource vertices, every degree <= 3,
// grown vertex by vertex from a seeded generator; identical for equal seeds.
// Each agent is red with probability red_fraction.
AccessibilityGraph gen_random_binary_tree(std::uint64_t seed, int max_resources, int max_agents,
                                          const Rational& red_fraction);

struct Instance {
    AccessibilityGraph graph;
    UtilitySpec spec;
    std::optional<StrategyProfile> initial;
};

// JSON instance files. Rationals travel as "p/q" strings so exactness survives
// any consumer. Schema:
//   {
//     "resources": ["q1", ...],
//     "agents":    [{"name": "a1", "color": "red"}, ...],
//     "edges":     [{"agent": "a1", "resource": "q1"}, ...],
//     "lambda":    "3/5",
//     "p_shape":   "abstract" | {"linear": "1/1"},
//     "initial":   {"a1": "q1", ...}          (optional)
//   }
// Malformed rationals, unknown colors, dangling names, or a peak outside (0,1)
// raise ParseError. save emits the canonical form; loading a canonical file and
// saving it again reproduces it byte for byte.
Instance parse_instance(const std::string& json_text);
Instance load_instance(const std::string& path);
std::string instance_to_json(const Instance& inst);
void save_instance(const Instance& inst, const std::string& path);

}  // namespace rsg
