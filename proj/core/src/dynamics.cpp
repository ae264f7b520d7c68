#include "rsg/dynamics.hpp"

#include <map>
#include <random>
#include <stdexcept>
#include <utility>

namespace rsg {

std::string mode_name(Mode m) { return m == Mode::ImpactBlind ? "ib" : "ia"; }

std::optional<Mode> parse_mode(const std::string& text) {
    if (text == "ib") return Mode::ImpactBlind;
    if (text == "ia") return Mode::ImpactAware;
    return std::nullopt;
}

std::string scheduler_name(SchedulerKind k) {
    switch (k) {
        case SchedulerKind::FirstImproving: return "first";
        case SchedulerKind::RoundRobin: return "round-robin";
        default: return "random";
    }
}

std::optional<SchedulerKind> parse_scheduler(const std::string& text) {
    if (text == "first") return SchedulerKind::FirstImproving;
    if (text == "round-robin") return SchedulerKind::RoundRobin;
    if (text == "random") return SchedulerKind::SeededRandom;
    return std::nullopt;
}

std::string outcome_name(Trace::Outcome o) {
    switch (o) {
        case Trace::Outcome::Equilibrium: return "equilibrium";
        case Trace::Outcome::StepLimit: return "step-limit";
        default: return "profile-revisited";
    }
}

void validate_move(const AccessibilityGraph& g, const StrategyProfile& s, const Move& m) {
    if (m.agent < 0 || m.agent >= g.num_agents())
        throw std::invalid_argument("move: unknown agent id " + std::to_string(m.agent));
    if (static_cast<int>(s.choice.size()) != g.num_agents())
        throw std::invalid_argument("move: profile size does not match agent count");
    if (s.choice[m.agent] != m.from)
        throw std::invalid_argument("move: agent " + g.agent_name(m.agent) +
                                    " is not at the stated source");
    if (m.to == m.from)
        throw std::invalid_argument("move: source equals target");
    if (m.to < 0 || m.to >= g.num_resources() || !g.has_edge(m.agent, m.to))
        throw std::invalid_argument("move: target not accessible to agent " +
                                    g.agent_name(m.agent));
}

namespace {

Rational key_in(const ResourceState& st, Color c, const Rational& lambda) {
    return reflect(Rational(st.count(c), st.total()), lambda);
}

// Key the mover compares against its current one, or nullopt when the target
// can never attract (ImpactBlind on an empty resource has nothing to perceive).
std::optional<Rational> candidate_key(const ResourceState& target, Color c,
                                      const Rational& lambda, Mode mode) {
    if (mode == Mode::ImpactBlind) {
        if (target.empty()) return std::nullopt;
        return key_in(target, c, lambda);
    }
    ResourceState post = target;
    if (c == Color::Red) ++post.red; else ++post.blue;
    return key_in(post, c, lambda);
}

std::optional<Move> best_move_from_states(const AccessibilityGraph& g,
                                          const std::vector<ResourceState>& states,
                                          const ResourceId* choice, AgentId a,
                                          const Rational& lambda, Mode mode) {
    const Color c = g.color(a);
    const ResourceId from = choice[a];
    const Rational current = key_in(states[from], c, lambda);
    std::optional<Move> best;
    std::optional<Rational> best_key;
    for (const ResourceId to : g.accessible(a)) {
        if (to == from) continue;
        const auto key = candidate_key(states[to], c, lambda, mode);
        if (!key || !(*key > current)) continue;
        if (!best_key || *key > *best_key) {
            best_key = key;
            best = Move{a, from, to};
        }
    }
    return best;
}

std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n) {
    // Rejection sampling keeps the draw unbiased and byte-stable across platforms.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do { v = rng(); } while (v >= limit);
    return v % n;
}

}  // namespace

bool is_improving(const AccessibilityGraph& g, const StrategyProfile& s, const Move& m,
                  const UtilitySpec& spec, Mode mode) {
    validate_move(g, s, m);
    const Rational& lambda = spec.lambda();
    const Color c = g.color(m.agent);
    const Rational current = key_in(resource_state(g, s, m.from), c, lambda);
    const auto key = candidate_key(resource_state(g, s, m.to), c, lambda, mode);
    return key && *key > current;
}

std::vector<Move> improving_moves(const AccessibilityGraph& g, const StrategyProfile& s,
                                  const UtilitySpec& spec, Mode mode) {
    if (!is_feasible(g, s))
        throw std::invalid_argument("improving_moves: profile is not feasible");
    const Rational& lambda = spec.lambda();
    const std::vector<ResourceState> states = state_counts(g, s);
    std::vector<Move> out;
    for (AgentId a = 0; a < g.num_agents(); ++a) {
        const Color c = g.color(a);
        const ResourceId from = s.choice[a];
        const Rational current = key_in(states[from], c, lambda);
        for (const ResourceId to : g.accessible(a)) {
            if (to == from) continue;
            const auto key = candidate_key(states[to], c, lambda, mode);
            if (key && *key > current) out.push_back(Move{a, from, to});
        }
    }
    return out;
}

bool has_improving_move(const AccessibilityGraph& g, const StrategyProfile& s,
                        const UtilitySpec& spec, Mode mode) {
    if (!is_feasible(g, s))
        throw std::invalid_argument("has_improving_move: profile is not feasible");
    const Rational& lambda = spec.lambda();
    const std::vector<ResourceState> states = state_counts(g, s);
    for (AgentId a = 0; a < g.num_agents(); ++a) {
        const Color c = g.color(a);
        const ResourceId from = s.choice[a];
        const Rational current = key_in(states[from], c, lambda);
        for (const ResourceId to : g.accessible(a)) {
            if (to == from) continue;
            const auto key = candidate_key(states[to], c, lambda, mode);
            if (key && *key > current) return true;
        }
    }
    return false;
}

std::optional<Move> best_improving_move(const AccessibilityGraph& g, const StrategyProfile& s,
                                        AgentId agent, const UtilitySpec& spec, Mode mode) {
    if (!is_feasible(g, s))
        throw std::invalid_argument("best_improving_move: profile is not feasible");
    if (agent < 0 || agent >= g.num_agents())
        throw std::invalid_argument("best_improving_move: unknown agent id " +
                                    std::to_string(agent));
    const std::vector<ResourceState> states = state_counts(g, s);
    return best_move_from_states(g, states, s.choice.data(), agent, spec.lambda(), mode);
}

StrategyProfile apply(const AccessibilityGraph& g, const StrategyProfile& s, const Move& m) {
    validate_move(g, s, m);
    StrategyProfile next = s;
    next.choice[m.agent] = m.to;
    return next;
}

Trace run(const AccessibilityGraph& g, const StrategyProfile& s0, const UtilitySpec& spec,
          Mode mode, SchedulerKind scheduler, std::uint64_t seed, std::size_t max_steps) {
    if (!is_feasible(g, s0))
        throw std::invalid_argument("run: initial profile is not feasible");
    const Rational& lambda = spec.lambda();

    Trace t;
    t.initial = s0;
    StrategyProfile cur = s0;
    int cursor = 0;  // RoundRobin rotation state; part of the revisit key
    std::mt19937_64 rng(seed);
    const bool deterministic = scheduler != SchedulerKind::SeededRandom;
    std::map<std::pair<std::vector<ResourceId>, int>, std::size_t> visited;

    for (;;) {
        if (deterministic) {
            const auto key = std::make_pair(cur.choice,
                                            scheduler == SchedulerKind::RoundRobin ? cursor : 0);
            const auto [it, fresh] = visited.try_emplace(key, t.steps.size());
            if (!fresh) {
                t.outcome = Trace::Outcome::ProfileRevisited;
                t.revisit_position = it->second;
                return t;
            }
        }

        const std::vector<ResourceState> states = state_counts(g, cur);
        std::optional<Move> mv;
        switch (scheduler) {
            case SchedulerKind::FirstImproving: {
                for (AgentId a = 0; a < g.num_agents() && !mv; ++a) {
                    const Color c = g.color(a);
                    const ResourceId from = cur.choice[a];
                    const Rational current = key_in(states[from], c, lambda);
                    for (const ResourceId to : g.accessible(a)) {
                        if (to == from) continue;
                        const auto key = candidate_key(states[to], c, lambda, mode);
                        if (key && *key > current) { mv = Move{a, from, to}; break; }
                    }
                }
                break;
            }
            case SchedulerKind::RoundRobin: {
                const int n = g.num_agents();
                for (int i = 0; i < n && !mv; ++i) {
                    const AgentId a = static_cast<AgentId>((cursor + i) % n);
                    mv = best_move_from_states(g, states, cur.choice.data(), a, lambda, mode);
                    if (mv) cursor = (a + 1) % n;
                }
                break;
            }
            case SchedulerKind::SeededRandom: {
                const std::vector<Move> all = improving_moves(g, cur, spec, mode);
                if (!all.empty()) mv = all[bounded_draw(rng, all.size())];
                break;
            }
        }

        if (!mv) {
            t.outcome = Trace::Outcome::Equilibrium;
            return t;
        }
        if (t.steps.size() >= max_steps) {
            t.outcome = Trace::Outcome::StepLimit;
            return t;
        }
        cur = apply(g, cur, *mv);
        t.steps.push_back(Step{*mv, cur});
    }
}

std::string trace_to_text(const AccessibilityGraph& g, const Trace& t) {
    std::string out = "initial";
    for (AgentId a = 0; a < g.num_agents(); ++a)
        out += " " + g.agent_name(a) + "=" + g.resource_name(t.initial.choice[a]);
    out += "\n";
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const Move& m = t.steps[i].move;
        out += "step " + std::to_string(i + 1) + " " + g.agent_name(m.agent) + " " +
               g.resource_name(m.from) + " -> " + g.resource_name(m.to) + "\n";
    }
    out += "outcome " + outcome_name(t.outcome) + " steps " + std::to_string(t.steps.size());
    if (t.outcome == Trace::Outcome::ProfileRevisited)
        out += " first-seen " + std::to_string(t.revisit_position);
    out += "\n";
    return out;
}

}  // namespace rsg
