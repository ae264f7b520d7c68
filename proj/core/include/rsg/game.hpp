#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rsg/rational.hpp"

namespace rsg {

enum class Color : std::uint8_t { Red, Blue };

inline Color opposite(Color c) { return c == Color::Red ? Color::Blue : Color::Red; }

std::string color_name(Color c);
std::optional<Color> parse_color(const std::string& text);

// Dense indices assigned at graph construction; display names live in the graph.
using AgentId = std::int32_t;
using ResourceId = std::int32_t;

// Bipartite accessibility graph between two-colored agents and resources.
// Invariants: every agent reaches at least one resource, adjacency lists are
// sorted ascending, names are unique per side.
class AccessibilityGraph {
public:
    int num_agents() const { return static_cast<int>(agent_names_.size()); }
    int num_resources() const { return static_cast<int>(resource_names_.size()); }

    Color color(AgentId a) const { return colors_[a]; }
    const std::string& agent_name(AgentId a) const { return agent_names_[a]; }
    const std::string& resource_name(ResourceId q) const { return resource_names_[q]; }

    const std::vector<ResourceId>& accessible(AgentId a) const { return access_[a]; }
    const std::vector<AgentId>& adjacent_agents(ResourceId q) const { return adj_[q]; }

    int agent_degree(AgentId a) const { return static_cast<int>(access_[a].size()); }
    int resource_degree(ResourceId q) const { return static_cast<int>(adj_[q].size()); }
    int max_resource_degree() const { return max_resource_degree_; }

    std::optional<AgentId> find_agent(const std::string& name) const;
    std::optional<ResourceId> find_resource(const std::string& name) const;

    bool has_edge(AgentId a, ResourceId q) const;

private:
    friend class GraphBuilder;
    std::vector<std::string> resource_names_;
    std::vector<std::string> agent_names_;
    std::vector<Color> colors_;
    std::vector<std::vector<ResourceId>> access_;
    std::vector<std::vector<AgentId>> adj_;
    int max_resource_degree_ = 0;
};

class GraphBuilder {
public:
    ResourceId add_resource(std::string name);
    AgentId add_agent(std::string name, Color color);
    GraphBuilder& add_edge(AgentId agent, ResourceId resource);

    // Validates and freezes the graph. Throws std::invalid_argument on duplicate
    // names or edges, an agent with no accessible resource, or an empty side.
    AccessibilityGraph build() const;

private:
    std::vector<std::string> resource_names_;
    std::vector<std::string> agent_names_;
    std::vector<Color> colors_;
    std::vector<std::pair<AgentId, ResourceId>> edges_;
};

// One chosen resource per agent, indexed by agent id.
struct StrategyProfile {
    std::vector<ResourceId> choice;
    bool operator==(const StrategyProfile&) const = default;
};

// True iff the profile has one entry per agent and each lies in that agent's list.
bool is_feasible(const AccessibilityGraph& g, const StrategyProfile& s);

struct ResourceState {
    int red = 0;
    int blue = 0;

    int total() const { return red + blue; }
    bool empty() const { return total() == 0; }
    bool monochromatic() const { return !empty() && (red == 0 || blue == 0); }
    int count(Color c) const { return c == Color::Red ? red : blue; }
    bool operator==(const ResourceState&) const = default;
};

enum class PShape { Abstract, Linear };

// Single-peaked utility: peak lambda in (0,1), p(0) = 0, strictly increasing up
// to the peak, and p(x) = p(lambda(1-x)/(1-lambda)) past it. Abstract fixes only
// the peak (enough to order utilities); Linear additionally fixes p(x) = slope*x
// on the rising side, making welfare well defined.
class UtilitySpec {
public:
    static UtilitySpec abstract_peak(Rational lambda);
    static UtilitySpec linear(Rational lambda, Rational slope);

    const Rational& lambda() const { return lambda_; }
    PShape shape() const { return shape_; }
    const Rational& slope() const;  // Linear only

private:
    UtilitySpec(Rational lambda, PShape shape, Rational slope);
    Rational lambda_;
    PShape shape_;
    Rational slope_;
};

// Fraction of color c among agents on the resource; empty resources have none.
std::optional<Rational> fraction(const ResourceState& st, Color c);

// Maps x through the peak's reflection onto the rising side [0, lambda]:
// x itself below the peak, lambda(1-x)/(1-lambda) above it. Any valid p is
// strictly increasing on the result, so this key orders utilities exactly.
Rational reflect(const Rational& x, const Rational& lambda);

enum class UtilityOrder { Less, Equal, Greater };

// Orders p(x) against p(y) for every p with peak lambda.
UtilityOrder compare_utility(const Rational& x, const Rational& y, const Rational& lambda);

// Evaluates a Linear-shape p exactly; Abstract shape throws std::invalid_argument.
Rational eval_p(const Rational& x, const UtilitySpec& spec);

// Color counts on resource q under profile s. O(deg q).
ResourceState resource_state(const AccessibilityGraph& g, const StrategyProfile& s, ResourceId q);

// Counts on every resource at once. O(agents + resources).
std::vector<ResourceState> state_counts(const AccessibilityGraph& g, const StrategyProfile& s);

// reflect of the agent's own-color fraction at its chosen resource. Orders the
// agent's utility across profiles without committing to a concrete p; for the
// linear shape, eval_p of the fraction equals slope * utility_key.
Rational utility_key(const AccessibilityGraph& g, const StrategyProfile& s, AgentId a,
                     const UtilitySpec& spec);

// Sum of p over agents on q: r*p(r/(r+b)) + b*p(b/(r+b)). Linear shape only.
Rational welfare_at(const AccessibilityGraph& g, const StrategyProfile& s, ResourceId q,
                    const UtilitySpec& spec);

Rational social_welfare(const AccessibilityGraph& g, const StrategyProfile& s,
                        const UtilitySpec& spec);

}  // namespace rsg
