#include "rsg/instances.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "rsg/error.hpp"

namespace rsg {

AccessibilityGraph gen_no_ibe(int d) {
    if (d < 3) throw std::invalid_argument("gen_no_ibe: need degree >= 3, got " + std::to_string(d));
    GraphBuilder b;
    const ResourceId q1 = b.add_resource("q1");
    const ResourceId q2 = b.add_resource("q2");
    const AgentId a1 = b.add_agent("a1", Color::Red);
    b.add_edge(a1, q1).add_edge(a1, q2);
    for (int hub = 1; hub <= 2; ++hub) {
        const ResourceId q = hub == 1 ? q1 : q2;
        b.add_edge(b.add_agent("b" + std::to_string(hub), Color::Blue), q);
        for (int i = 1; i <= d - 2; ++i) {
            const std::string name = "r" + std::to_string(hub) + "_" + std::to_string(i);
            b.add_edge(b.add_agent(name, Color::Red), q);
        }
    }
    return b.build();
}

AccessibilityGraph gen_no_iae_binary_tree() {
    GraphBuilder b;
    const ResourceId q1 = b.add_resource("q1");
    const ResourceId q2 = b.add_resource("q2");
    const ResourceId q3 = b.add_resource("q3");
    const ResourceId q4 = b.add_resource("q4");
    const AgentId a1 = b.add_agent("a1", Color::Red);
    const AgentId a2 = b.add_agent("a2", Color::Blue);
    const AgentId a3 = b.add_agent("a3", Color::Blue);
    b.add_edge(a1, q1).add_edge(a1, q2);
    b.add_edge(a2, q1).add_edge(a2, q3);
    b.add_edge(a3, q2).add_edge(a3, q4);
    b.add_edge(b.add_agent("b1", Color::Blue), q1);
    b.add_edge(b.add_agent("b2", Color::Blue), q2);
    b.add_edge(b.add_agent("r1", Color::Red), q3);
    b.add_edge(b.add_agent("r2", Color::Red), q3);
    b.add_edge(b.add_agent("r3", Color::Red), q4);
    b.add_edge(b.add_agent("r4", Color::Red), q4);
    return b.build();
}

AccessibilityGraph gen_no_iae_chaser(int d) {
    if (d < 4)
        throw std::invalid_argument("gen_no_iae_chaser: need degree >= 4, got " + std::to_string(d));
    GraphBuilder b;
    const ResourceId q1 = b.add_resource("q1");
    const ResourceId q2 = b.add_resource("q2");
    const AgentId a1 = b.add_agent("a1", Color::Red);
    const AgentId a2 = b.add_agent("a2", Color::Blue);
    b.add_edge(a1, q1).add_edge(a1, q2);
    b.add_edge(a2, q1).add_edge(a2, q2);
    for (int hub = 1; hub <= 2; ++hub) {
        const ResourceId q = hub == 1 ? q1 : q2;
        for (int i = 1; i <= d - 2; ++i) {
            const std::string name = "f" + std::to_string(hub) + "_" + std::to_string(i);
            b.add_edge(b.add_agent(name, Color::Blue), q);
        }
    }
    return b.build();
}

AccessibilityGraph gen_cycle(int m, const std::vector<Color>& colors) {
    if (m < 2) throw std::invalid_argument("gen_cycle: need size >= 2, got " + std::to_string(m));
    if (static_cast<int>(colors.size()) != m)
        throw std::invalid_argument("gen_cycle: expected " + std::to_string(m) + " colors, got " +
                                    std::to_string(colors.size()));
    GraphBuilder b;
    std::vector<ResourceId> qs;
    for (int i = 1; i <= m; ++i) qs.push_back(b.add_resource("q" + std::to_string(i)));
    for (int i = 0; i < m; ++i) {
        const AgentId a = b.add_agent("a" + std::to_string(i + 1), colors[i]);
        b.add_edge(a, qs[i]).add_edge(a, qs[(i + 1) % m]);
    }
    return b.build();
}

namespace {

std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do { v = rng(); } while (v >= limit);
    return v % n;
}

}  // namespace

AccessibilityGraph gen_cycle(int m, std::uint64_t seed) {
    if (m < 2) throw std::invalid_argument("gen_cycle: need size >= 2, got " + std::to_string(m));
    std::mt19937_64 rng(seed);
    std::vector<Color> colors;
    for (int i = 0; i < m; ++i)
        colors.push_back(bounded_draw(rng, 2) == 0 ? Color::Red : Color::Blue);
    return gen_cycle(m, colors);
}

AccessibilityGraph gen_random_binary_tree(std::uint64_t seed, int max_resources, int max_agents,
                                          const Rational& red_fraction) {
    if (max_resources < 1 || max_agents < 1)
        throw std::invalid_argument("gen_random_binary_tree: limits must be >= 1");
    if (red_fraction < Rational(0) || red_fraction > Rational(1))
        throw std::invalid_argument("gen_random_binary_tree: red fraction must lie in [0,1]");
    std::mt19937_64 rng(seed);
    const int want_resources = 1 + static_cast<int>(bounded_draw(rng, max_resources));
    const int want_agents = 1 + static_cast<int>(bounded_draw(rng, max_agents));

    // Grow a tree vertex by vertex; every newcomer attaches to an opposite-type
    // vertex that still has a free slot (degree < 3).
    std::vector<int> res_deg{0};
    std::vector<int> ag_deg;
    std::vector<std::pair<int, int>> edges;  // (agent, resource)
    const auto pick_open = [&](const std::vector<int>& degs) -> int {
        std::vector<int> open;
        for (int i = 0; i < static_cast<int>(degs.size()); ++i)
            if (degs[i] < 3) open.push_back(i);
        if (open.empty()) return -1;
        return open[bounded_draw(rng, open.size())];
    };
    while (static_cast<int>(res_deg.size()) < want_resources ||
           static_cast<int>(ag_deg.size()) < want_agents) {
        const int host_res = pick_open(res_deg);
        const int host_ag = pick_open(ag_deg);
        const bool can_agent = static_cast<int>(ag_deg.size()) < want_agents && host_res >= 0;
        const bool can_res = static_cast<int>(res_deg.size()) < want_resources && host_ag >= 0;
        if (!can_agent && !can_res) break;
        const bool add_agent = can_agent && (!can_res || bounded_draw(rng, 2) == 0);
        if (add_agent) {
            edges.emplace_back(static_cast<int>(ag_deg.size()), host_res);
            ag_deg.push_back(1);
            ++res_deg[host_res];
        } else {
            edges.emplace_back(host_ag, static_cast<int>(res_deg.size()));
            res_deg.push_back(1);
            ++ag_deg[host_ag];
        }
    }

    GraphBuilder b;
    for (int q = 0; q < static_cast<int>(res_deg.size()); ++q)
        b.add_resource("q" + std::to_string(q + 1));
    for (int a = 0; a < static_cast<int>(ag_deg.size()); ++a) {
        const bool red = red_fraction.num() > 0 &&
                         bounded_draw(rng, static_cast<std::uint64_t>(red_fraction.den())) <
                             static_cast<std::uint64_t>(red_fraction.num());
        b.add_agent("a" + std::to_string(a + 1), red ? Color::Red : Color::Blue);
    }
    for (const auto& [a, q] : edges) b.add_edge(a, q);
    return b.build();
}

namespace {

using ordered_json = nlohmann::ordered_json;

Rational parse_rational_field(const ordered_json& j, const std::string& what) {
    if (!j.is_string())
        throw ParseError("instance: " + what + " must be a rational string \"p/q\"");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
        throw ParseError("instance: bad rational in " + what + ": " + e.what());
    }
}

}  // namespace

Instance parse_instance(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("instance: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("instance: top level must be an object");
    for (const char* field : {"resources", "agents", "edges", "lambda", "p_shape"})
        if (!j.contains(field)) throw ParseError(std::string("instance: missing field \"") + field + "\"");

    GraphBuilder b;
    if (!j["resources"].is_array()) throw ParseError("instance: \"resources\" must be an array");
    for (const auto& r : j["resources"]) {
        if (!r.is_string()) throw ParseError("instance: resource names must be strings");
        b.add_resource(r.get<std::string>());
    }
    if (!j["agents"].is_array()) throw ParseError("instance: \"agents\" must be an array");
    std::vector<std::string> agent_names;
    for (const auto& a : j["agents"]) {
        if (!a.is_object() || !a.contains("name") || !a.contains("color"))
            throw ParseError("instance: each agent needs \"name\" and \"color\"");
        const std::string color_text = a["color"].get<std::string>();
        const auto color = parse_color(color_text);
        if (!color) throw ParseError("instance: unknown color \"" + color_text + "\"");
        agent_names.push_back(a["name"].get<std::string>());
        b.add_agent(agent_names.back(), *color);
    }

    // Resolve names against the declared lists before the graph exists.
    const auto index_in = [](const std::vector<std::string>& names, const std::string& name) {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return static_cast<int>(i);
        return -1;
    };
    std::vector<std::string> resource_names;
    for (const auto& r : j["resources"]) resource_names.push_back(r.get<std::string>());

    if (!j["edges"].is_array()) throw ParseError("instance: \"edges\" must be an array");
    for (const auto& e : j["edges"]) {
        if (!e.is_object() || !e.contains("agent") || !e.contains("resource"))
            throw ParseError("instance: each edge needs \"agent\" and \"resource\"");
        const std::string an = e["agent"].get<std::string>();
        const std::string qn = e["resource"].get<std::string>();
        const int a = index_in(agent_names, an);
        const int q = index_in(resource_names, qn);
        if (a < 0) throw ParseError("instance: edge references unknown agent \"" + an + "\"");
        if (q < 0) throw ParseError("instance: edge references unknown resource \"" + qn + "\"");
        b.add_edge(a, q);
    }

    const Rational lambda = parse_rational_field(j["lambda"], "\"lambda\"");
    if (lambda <= Rational(0) || lambda >= Rational(1))
        throw ParseError("instance: lambda must lie strictly inside (0,1), got " + lambda.str());

    std::optional<UtilitySpec> spec;
    const auto& shape = j["p_shape"];
    if (shape.is_string() && shape.get<std::string>() == "abstract") {
        spec = UtilitySpec::abstract_peak(lambda);
    } else if (shape.is_object() && shape.contains("linear")) {
        const Rational slope = parse_rational_field(shape["linear"], "\"p_shape.linear\"");
        if (slope <= Rational(0))
            throw ParseError("instance: linear slope must be positive, got " + slope.str());
        spec = UtilitySpec::linear(lambda, slope);
    } else {
        throw ParseError("instance: \"p_shape\" must be \"abstract\" or {\"linear\": \"p/q\"}");
    }

    AccessibilityGraph graph = [&] {
        try {
            return b.build();
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("instance: ") + e.what());
        }
    }();

    std::optional<StrategyProfile> initial;
    if (j.contains("initial")) {
        if (!j["initial"].is_object())
            throw ParseError("instance: \"initial\" must map agent names to resource names");
        StrategyProfile s;
        s.choice.assign(graph.num_agents(), -1);
        for (const auto& [an, qv] : j["initial"].items()) {
            const auto a = graph.find_agent(an);
            if (!a) throw ParseError("instance: initial profile references unknown agent \"" + an + "\"");
            const std::string qn = qv.get<std::string>();
            const auto q = graph.find_resource(qn);
            if (!q) throw ParseError("instance: initial profile references unknown resource \"" + qn + "\"");
            s.choice[*a] = *q;
        }
        for (AgentId a = 0; a < graph.num_agents(); ++a)
            if (s.choice[a] < 0)
                throw ParseError("instance: initial profile misses agent \"" + graph.agent_name(a) + "\"");
        if (!is_feasible(graph, s))
            throw ParseError("instance: initial profile assigns an inaccessible resource");
        initial = std::move(s);
    }

    return Instance{std::move(graph), std::move(*spec), std::move(initial)};
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("instance: cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

std::string instance_to_json(const Instance& inst) {
    const AccessibilityGraph& g = inst.graph;
    ordered_json j;
    j["resources"] = ordered_json::array();
    for (ResourceId q = 0; q < g.num_resources(); ++q) j["resources"].push_back(g.resource_name(q));
    j["agents"] = ordered_json::array();
    for (AgentId a = 0; a < g.num_agents(); ++a)
        j["agents"].push_back({{"name", g.agent_name(a)}, {"color", color_name(g.color(a))}});
    j["edges"] = ordered_json::array();
    for (AgentId a = 0; a < g.num_agents(); ++a)
        for (const ResourceId q : g.accessible(a))
            j["edges"].push_back({{"agent", g.agent_name(a)}, {"resource", g.resource_name(q)}});
    j["lambda"] = inst.spec.lambda().str();
    if (inst.spec.shape() == PShape::Abstract) j["p_shape"] = "abstract";
    else j["p_shape"] = ordered_json{{"linear", inst.spec.slope().str()}};
    if (inst.initial) {
        ordered_json init = ordered_json::object();
        for (AgentId a = 0; a < g.num_agents(); ++a)
            init[g.agent_name(a)] = g.resource_name(inst.initial->choice[a]);
        j["initial"] = std::move(init);
    }
    return j.dump(2) + "\n";
}

void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("instance: cannot write \"" + path + "\"");
    out << instance_to_json(inst);
}

}  // namespace rsg
