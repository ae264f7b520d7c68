#include "rsg/game.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace rsg {

std::string color_name(Color c) { return c == Color::Red ? "red" : "blue"; }

std::optional<Color> parse_color(const std::string& text) {
    if (text == "red") return Color::Red;
    if (text == "blue") return Color::Blue;
    return std::nullopt;
}

std::optional<AgentId> AccessibilityGraph::find_agent(const std::string& name) const {
    for (AgentId a = 0; a < num_agents(); ++a)
        if (agent_names_[a] == name) return a;
    return std::nullopt;
}

std::optional<ResourceId> AccessibilityGraph::find_resource(const std::string& name) const {
    for (ResourceId q = 0; q < num_resources(); ++q)
        if (resource_names_[q] == name) return q;
    return std::nullopt;
}

bool AccessibilityGraph::has_edge(AgentId a, ResourceId q) const {
    const auto& qs = access_[a];
    return std::binary_search(qs.begin(), qs.end(), q);
}

ResourceId GraphBuilder::add_resource(std::string name) {
    resource_names_.push_back(std::move(name));
    return static_cast<ResourceId>(resource_names_.size() - 1);
}

AgentId GraphBuilder::add_agent(std::string name, Color color) {
    agent_names_.push_back(std::move(name));
    colors_.push_back(color);
    return static_cast<AgentId>(agent_names_.size() - 1);
}

GraphBuilder& GraphBuilder::add_edge(AgentId agent, ResourceId resource) {
    edges_.emplace_back(agent, resource);
    return *this;
}

AccessibilityGraph GraphBuilder::build() const {
    if (resource_names_.empty()) throw std::invalid_argument("graph: no resources");
    if (agent_names_.empty()) throw std::invalid_argument("graph: no agents");

    const auto check_unique = [](const std::vector<std::string>& names, const char* side) {
        std::unordered_set<std::string> seen;
        for (const auto& n : names)
            if (!seen.insert(n).second)
                throw std::invalid_argument(std::string("graph: duplicate ") + side + " name \"" + n + "\"");
    };
    check_unique(resource_names_, "resource");
    check_unique(agent_names_, "agent");

    AccessibilityGraph g;
    g.resource_names_ = resource_names_;
    g.agent_names_ = agent_names_;
    g.colors_ = colors_;
    g.access_.resize(agent_names_.size());
    g.adj_.resize(resource_names_.size());

    std::set<std::pair<AgentId, ResourceId>> seen_edges;
    for (const auto& [a, q] : edges_) {
        if (a < 0 || a >= g.num_agents()) throw std::invalid_argument("graph: edge with bad agent id");
        if (q < 0 || q >= g.num_resources()) throw std::invalid_argument("graph: edge with bad resource id");
        if (!seen_edges.emplace(a, q).second)
            throw std::invalid_argument("graph: duplicate edge " + agent_names_[a] + " - " + resource_names_[q]);
        g.access_[a].push_back(q);
        g.adj_[q].push_back(a);
    }
    for (AgentId a = 0; a < g.num_agents(); ++a) {
        if (g.access_[a].empty())
            throw std::invalid_argument("graph: agent \"" + agent_names_[a] + "\" has no accessible resource");
        std::sort(g.access_[a].begin(), g.access_[a].end());
    }
    for (ResourceId q = 0; q < g.num_resources(); ++q) {
        std::sort(g.adj_[q].begin(), g.adj_[q].end());
        g.max_resource_degree_ = std::max(g.max_resource_degree_, g.resource_degree(q));
    }
    return g;
}

bool is_feasible(const AccessibilityGraph& g, const StrategyProfile& s) {
    if (static_cast<int>(s.choice.size()) != g.num_agents()) return false;
    for (AgentId a = 0; a < g.num_agents(); ++a) {
        const ResourceId q = s.choice[a];
        if (q < 0 || q >= g.num_resources() || !g.has_edge(a, q)) return false;
    }
    return true;
}

UtilitySpec::UtilitySpec(Rational lambda, PShape shape, Rational slope)
    : lambda_(std::move(lambda)), shape_(shape), slope_(std::move(slope)) {
    if (lambda_ <= Rational(0) || lambda_ >= Rational(1))
        throw std::invalid_argument("utility: peak must lie strictly inside (0,1), got " + lambda_.str());
    if (shape_ == PShape::Linear && slope_ <= Rational(0))
        throw std::invalid_argument("utility: linear slope must be positive, got " + slope_.str());
}

UtilitySpec UtilitySpec::abstract_peak(Rational lambda) {
    return UtilitySpec(std::move(lambda), PShape::Abstract, Rational(1));
}

UtilitySpec UtilitySpec::linear(Rational lambda, Rational slope) {
    return UtilitySpec(std::move(lambda), PShape::Linear, std::move(slope));
}

const Rational& UtilitySpec::slope() const {
    if (shape_ != PShape::Linear)
        throw std::invalid_argument("utility: slope is only defined for the linear shape");
    return slope_;
}

std::optional<Rational> fraction(const ResourceState& st, Color c) {
    if (st.empty()) return std::nullopt;
    return Rational(st.count(c), st.total());
}

Rational reflect(const Rational& x, const Rational& lambda) {
    if (x < Rational(0) || x > Rational(1))
        throw std::invalid_argument("reflect: x must lie in [0,1], got " + x.str());
    if (lambda <= Rational(0) || lambda >= Rational(1))
        throw std::invalid_argument("reflect: peak must lie strictly inside (0,1), got " + lambda.str());
    if (x <= lambda) return x;
    return lambda * (Rational(1) - x) / (Rational(1) - lambda);
}

UtilityOrder compare_utility(const Rational& x, const Rational& y, const Rational& lambda) {
    const Rational kx = reflect(x, lambda);
    const Rational ky = reflect(y, lambda);
    if (kx < ky) return UtilityOrder::Less;
    if (ky < kx) return UtilityOrder::Greater;
    return UtilityOrder::Equal;
}

Rational eval_p(const Rational& x, const UtilitySpec& spec) {
    if (spec.shape() != PShape::Linear)
        throw std::invalid_argument("eval_p: abstract shape has no concrete values");
    return spec.slope() * reflect(x, spec.lambda());
}

ResourceState resource_state(const AccessibilityGraph& g, const StrategyProfile& s, ResourceId q) {
    if (q < 0 || q >= g.num_resources())
        throw std::invalid_argument("resource_state: unknown resource id " + std::to_string(q));
    if (static_cast<int>(s.choice.size()) != g.num_agents())
        throw std::invalid_argument("resource_state: profile size does not match agent count");
    ResourceState st;
    for (const AgentId a : g.adjacent_agents(q)) {
        if (s.choice[a] != q) continue;
        if (g.color(a) == Color::Red) ++st.red; else ++st.blue;
    }
    return st;
}

std::vector<ResourceState> state_counts(const AccessibilityGraph& g, const StrategyProfile& s) {
    if (static_cast<int>(s.choice.size()) != g.num_agents())
        throw std::invalid_argument("state_counts: profile size does not match agent count");
    std::vector<ResourceState> states(g.num_resources());
    for (AgentId a = 0; a < g.num_agents(); ++a) {
        ResourceState& st = states[s.choice[a]];
        if (g.color(a) == Color::Red) ++st.red; else ++st.blue;
    }
    return states;
}

Rational utility_key(const AccessibilityGraph& g, const StrategyProfile& s, AgentId a,
                     const UtilitySpec& spec) {
    if (a < 0 || a >= g.num_agents())
        throw std::invalid_argument("utility_key: unknown agent id " + std::to_string(a));
    const ResourceState st = resource_state(g, s, s.choice[a]);
    // The agent occupies its choice, so the fraction exists.
    return reflect(Rational(st.count(g.color(a)), st.total()), spec.lambda());
}

namespace {

Rational welfare_of_state(const ResourceState& st, const UtilitySpec& spec) {
    if (st.empty()) return Rational(0);
    const Rational total(st.total());
    Rational w(0);
    if (st.red > 0) w += Rational(st.red) * eval_p(Rational(st.red) / total, spec);
    if (st.blue > 0) w += Rational(st.blue) * eval_p(Rational(st.blue) / total, spec);
    return w;
}

}  // namespace

Rational welfare_at(const AccessibilityGraph& g, const StrategyProfile& s, ResourceId q,
                    const UtilitySpec& spec) {
    return welfare_of_state(resource_state(g, s, q), spec);
}

Rational social_welfare(const AccessibilityGraph& g, const StrategyProfile& s,
                        const UtilitySpec& spec) {
    Rational w(0);
    for (const ResourceState& st : state_counts(g, s)) w += welfare_of_state(st, spec);
    return w;
}

}  // namespace rsg
