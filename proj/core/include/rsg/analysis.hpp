#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rsg/dynamics.hpp"

namespace rsg {

inline constexpr std::uint64_t kDefaultProfileBudget = 10'000'000;

// Mixed-radix view of the feasible profile space: agent 0 is the most
// significant digit, and each digit is a position in that agent's sorted
// accessible list. Construction throws BudgetError when the space exceeds the
// budget, naming the true profile count.
class ProfileSpace {
public:
    explicit ProfileSpace(const AccessibilityGraph& g,
                          std::uint64_t budget = kDefaultProfileBudget);

    std::uint64_t size() const { return size_; }
    StrategyProfile profile_at(std::uint64_t index) const;
    std::uint64_t index_of(const StrategyProfile& s) const;
    // Weight of agent a's digit: adjacent indices with equal higher digits
    // differ by stride(a) per position in a's accessible list.
    std::uint64_t stride(AgentId a) const { return stride_[a]; }

private:
    const AccessibilityGraph* g_;
    std::vector<std::uint64_t> stride_;
    std::uint64_t size_;
};

// Materialized profile list in mixed-radix order. Intended for small spaces;
// use ProfileSpace directly to stream through large ones.
std::vector<StrategyProfile> enumerate_profiles(const AccessibilityGraph& g,
                                                std::uint64_t budget = kDefaultProfileBudget);

// Every feasible profile, with one edge per improving move, packed by profile
// index. Sinks are exactly the equilibria of the chosen mode.
class ImprovementDigraph {
public:
    struct Edge {
        std::uint64_t target;
        Move move;
    };

    std::uint64_t num_nodes() const { return offsets_.size() - 1; }
    std::uint64_t num_edges() const { return edges_.size(); }
    std::span<const Edge> out(std::uint64_t node) const {
        return {edges_.data() + offsets_[node], edges_.data() + offsets_[node + 1]};
    }
    bool is_sink(std::uint64_t node) const { return offsets_[node] == offsets_[node + 1]; }

private:
    friend ImprovementDigraph build_improvement_digraph(const AccessibilityGraph&,
                                                        const UtilitySpec&, Mode, int,
                                                        std::uint64_t);
    std::vector<std::uint64_t> offsets_;
    std::vector<Edge> edges_;
};

// Builds the full digraph. Workers partition the index range; the result is
// identical for every job count. Edges of a node follow the improving_moves
// order (agent id, then target resource id).
ImprovementDigraph build_improvement_digraph(const AccessibilityGraph& g, const UtilitySpec& spec,
                                             Mode mode, int jobs = 1,
                                             std::uint64_t budget = kDefaultProfileBudget);

std::vector<std::uint64_t> digraph_sinks(const ImprovementDigraph& d);

struct CycleWitness {
    std::uint64_t start_node = 0;
    std::vector<Move> moves;  // applied from start_node, closing back on it
};

std::optional<CycleWitness> find_cycle(const ImprovementDigraph& d);

// Profiles with no improving move, in mixed-radix order. Scans the space with
// the generic move predicate and never builds the digraph, so it doubles as an
// independent cross-check of digraph sinks.
std::vector<StrategyProfile> find_equilibria(const AccessibilityGraph& g, const UtilitySpec& spec,
                                             Mode mode, int jobs = 1,
                                             std::uint64_t budget = kDefaultProfileBudget);

struct FipReport {
    bool holds = false;
    std::uint64_t profile_count = 0;
    // Fails only: a concrete improving-move cycle starting at cycle_start.
    std::optional<StrategyProfile> cycle_start;
    std::vector<Move> cycle;
};

// Finite-improvement property at desk scale: Holds iff the improvement digraph
// is acyclic, which over a finite profile space is exactly "every improving
// sequence terminates".
FipReport fip_check(const AccessibilityGraph& g, const UtilitySpec& spec, Mode mode, int jobs = 1,
                    std::uint64_t budget = kDefaultProfileBudget);

// Lexicographic potential for impact-blind dynamics with linear p in the
// increasing regime. Components, in comparison order: empty resources,
// exactly-i-agent monochromatic resources for i = 1..max degree, resources
// where some color count equals max degree - 1, social welfare.
struct PhiLex {
    std::int64_t empty_count = 0;
    std::vector<std::int64_t> mono_counts;
    std::int64_t near_cap_count = 0;
    Rational welfare;

    auto operator<=>(const PhiLex&) const = default;
    std::string str() const;
};

// Requires a linear shape for the welfare component.
PhiLex phi_lex(const AccessibilityGraph& g, const StrategyProfile& s, const UtilitySpec& spec);

struct PhiLexAudit {
    bool ok = true;
    std::size_t step = 0;  // index into trace.steps of the first violation
    std::optional<PhiLex> before;
    std::optional<PhiLex> after;
};

// Checks that PhiLex strictly increases at every trace step. Only meaningful
// for impact-blind traces; throws std::invalid_argument when the shape is not
// linear or the peak lies below lower_bound_L(max degree), where the
// monotonicity theorem does not apply.
PhiLexAudit audit_phi_lex(const AccessibilityGraph& g, const Trace& t, const UtilitySpec& spec);

// Sum over resources of the larger color count; bounded by the agent count.
std::int64_t phi_majority(const AccessibilityGraph& g, const StrategyProfile& s);

struct PhiMajorityAudit {
    bool ok = true;
    std::size_t step = 0;
    std::string detail;
};

// Checks that phi_majority never increases along the trace and drops by exactly
// one on every majority-to-minority step. Only meaningful for impact-aware
// traces; throws std::invalid_argument when the peak exceeds
// upper_bound_U(max degree) or a step's profile does not match its move.
PhiMajorityAudit audit_phi_majority(const AccessibilityGraph& g, const Trace& t,
                                    const UtilitySpec& spec);

enum class MoveClass {
    MajorityToMinority,
    MajorityToMajority,
    MinorityToMinority,
    MinorityToMajority,
    TieInvolved
};

std::string move_class_name(MoveClass c);

// Classifies by the mover's color counts in the pre-move states of both
// endpoints. Source: strict count majority or minority; an exact tie, or a
// source the mover's color fills outright (fraction 1), is degenerate and
// yields TieInvolved. Target: majority on a weak count majority (a pre-move
// tie tips the mover's way), minority on a strict deficit; an empty target or
// one already filled by the mover's color is degenerate.
MoveClass classify_move(const AccessibilityGraph& g, const StrategyProfile& s, const Move& m);

// Extremes of minority fractions (own-color share in (0,1/2)) and majority
// fractions (share in [1/2,1)) over the two resources a move touches, before
// and after. Absent when no fraction qualifies.
struct ExtremalFractions {
    std::optional<Rational> max_minority_before;
    std::optional<Rational> max_minority_after;
    std::optional<Rational> max_majority_before;
    std::optional<Rational> max_majority_after;
};

ExtremalFractions extremal_fraction_report(const AccessibilityGraph& g, const StrategyProfile& s,
                                           const StrategyProfile& s_after, ResourceId q_from,
                                           ResourceId q_to);

// DOT text of the whole digraph; nodes carry profile assignments, edges the
// moving agent. Deterministic output, intended for small spaces.
void write_dot(std::ostream& out, const AccessibilityGraph& g, const ImprovementDigraph& d);

}  // namespace rsg
