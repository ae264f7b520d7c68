#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rsg/game.hpp"

namespace rsg {

// How a deviating agent evaluates a candidate resource. ImpactBlind scores the
// target's current fraction, ignoring that arriving changes it (an empty target
// has no fraction and is never attractive). ImpactAware scores the fraction the
// move itself produces (an empty target becomes monochromatic, utility zero).
enum class Mode { ImpactBlind, ImpactAware };

std::string mode_name(Mode m);
std::optional<Mode> parse_mode(const std::string& text);

struct Move {
    AgentId agent;
    ResourceId from;
    ResourceId to;
    bool operator==(const Move&) const = default;
};

// Throws std::invalid_argument unless m is a feasible deviation from s:
// the agent exists, sits at m.from, and can access the distinct m.to.
void validate_move(const AccessibilityGraph& g, const StrategyProfile& s, const Move& m);

// Strict utility gain for the mover, judged per mode. Throws
// std::invalid_argument if the move is not a feasible deviation from s.
bool is_improving(const AccessibilityGraph& g, const StrategyProfile& s, const Move& m,
                  const UtilitySpec& spec, Mode mode);

// Every improving deviation from s, ordered by agent id then target resource id.
std::vector<Move> improving_moves(const AccessibilityGraph& g, const StrategyProfile& s,
                                  const UtilitySpec& spec, Mode mode);

// True iff any agent has an improving move; stops at the first one found.
bool has_improving_move(const AccessibilityGraph& g, const StrategyProfile& s,
                        const UtilitySpec& spec, Mode mode);

// The agent's improving move with the highest post-move (ImpactAware) or
// perceived (ImpactBlind) key; ties go to the lowest resource id.
std::optional<Move> best_improving_move(const AccessibilityGraph& g, const StrategyProfile& s,
                                        AgentId agent, const UtilitySpec& spec, Mode mode);

StrategyProfile apply(const AccessibilityGraph& g, const StrategyProfile& s, const Move& m);

enum class SchedulerKind {
    FirstImproving,  // lowest agent id with a move, its lowest target
    RoundRobin,      // rotating cursor over agents, each takes its best move
    SeededRandom     // uniform over all improving moves, seeded
};

std::string scheduler_name(SchedulerKind k);
std::optional<SchedulerKind> parse_scheduler(const std::string& text);

struct Step {
    Move move;
    StrategyProfile profile;  // profile after the move
};

struct Trace {
    enum class Outcome { Equilibrium, StepLimit, ProfileRevisited };

    StrategyProfile initial;
    std::vector<Step> steps;
    Outcome outcome = Outcome::Equilibrium;
    // ProfileRevisited only: earlier position in the visit sequence whose
    // profile equals the final one. Position 0 is the initial profile,
    // position i the profile after step i. A repeat under a deterministic
    // scheduler certifies the dynamics cycle forever.
    std::size_t revisit_position = 0;
};

std::string outcome_name(Trace::Outcome o);

// Plays improvement dynamics from s0 until equilibrium, a certified revisit, or
// max_steps. Deterministic schedulers detect revisits on their full state
// (profile plus rotation cursor for RoundRobin); SeededRandom never certifies a
// revisit and runs to equilibrium or the step limit. The seed only matters for
// SeededRandom.
Trace run(const AccessibilityGraph& g, const StrategyProfile& s0, const UtilitySpec& spec,
          Mode mode, SchedulerKind scheduler, std::uint64_t seed, std::size_t max_steps);

// Line-oriented log: initial assignment, one line per step, outcome line.
std::string trace_to_text(const AccessibilityGraph& g, const Trace& t);

}  // namespace rsg
