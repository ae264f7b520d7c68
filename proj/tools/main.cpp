// rsg: command-line front end for resource selection games. Subcommands load
// an instance file (or generate one), run improvement dynamics, enumerate
// equilibria, decide the finite-improvement property, or print the regime
// thresholds. Reports are deterministic JSON with exact "p/q" rationals.
//
// Exit codes: 0 success (and every --expect satisfied), 1 a checked property
// was violated or an expectation missed, 2 usage, parse or precondition error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "rsg/analysis.hpp"
#include "rsg/bounds.hpp"
#include "rsg/dynamics.hpp"
#include "rsg/error.hpp"
#include "rsg/game.hpp"
#include "rsg/instances.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;
using namespace rsg;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

ordered_json profile_json(const AccessibilityGraph& g, const StrategyProfile& s) {
    ordered_json j = ordered_json::object();
    for (AgentId a = 0; a < g.num_agents(); ++a)
        j[g.agent_name(a)] = g.resource_name(s.choice[a]);
    return j;
}

ordered_json move_json(const AccessibilityGraph& g, const Move& m) {
    return {{"agent", g.agent_name(m.agent)},
            {"from", g.resource_name(m.from)},
            {"to", g.resource_name(m.to)}};
}

ordered_json instance_json(const Instance& inst) {
    const auto& g = inst.graph;
    const int delta = g.max_resource_degree();
    ordered_json j;
    j["agents"] = g.num_agents();
    j["resources"] = g.num_resources();
    j["max_resource_degree"] = delta;
    j["lambda"] = inst.spec.lambda().str();
    if (inst.spec.shape() == PShape::Abstract) j["p_shape"] = "abstract";
    else j["p_shape"] = ordered_json{{"linear", inst.spec.slope().str()}};
    j["regime"] = delta >= 2 ? regime_name(regime(inst.spec.lambda(), delta)) : "degenerate";
    return j;
}

StrategyProfile starting_profile(const Instance& inst) {
    if (inst.initial) return *inst.initial;
    StrategyProfile s;
    for (AgentId a = 0; a < inst.graph.num_agents(); ++a)
        s.choice.push_back(inst.graph.accessible(a)[0]);
    return s;
}

void emit(const ordered_json& report, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << report.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot write \"" + out_path + "\"");
    out << report.dump(2) << "\n";
}

void write_digraph(const AccessibilityGraph& g, const ImprovementDigraph& d,
                   const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write \"" + path + "\"");
    write_dot(out, g, d);
}

// Records whether a stated expectation matched; any miss flips the exit code.
int note_expectation(ordered_json& report, const std::string& expect, bool met) {
    if (expect.empty()) return kExitOk;
    report["expected"] = expect;
    report["expectation_met"] = met;
    return met ? kExitOk : kExitViolation;
}

int cmd_run(const std::string& path, const std::string& mode_text,
            const std::string& scheduler_text, std::uint64_t seed, std::uint64_t max_steps,
            const std::string& audit_text, const std::string& expect,
            const std::string& out_path) {
    const Instance inst = load_instance(path);
    const auto mode = parse_mode(mode_text);
    const auto scheduler = parse_scheduler(scheduler_text);
    if (!mode) throw CLI::ValidationError("--mode must be ib or ia");
    if (!scheduler) throw CLI::ValidationError("--scheduler must be first, round-robin or random");
    if (audit_text != "none" && audit_text != "phi-lex" && audit_text != "phi-majority")
        throw CLI::ValidationError("--audit must be phi-lex, phi-majority or none");

    const auto s0 = starting_profile(inst);
    const auto trace = run(inst.graph, s0, inst.spec, *mode, *scheduler, seed,
                           static_cast<std::size_t>(max_steps));

    ordered_json report;
    report["command"] = "run";
    report["instance"] = instance_json(inst);
    report["parameters"] = {{"mode", mode_text},      {"scheduler", scheduler_text},
                            {"seed", seed},           {"max_steps", max_steps},
                            {"audit", audit_text},    {"input", path}};
    report["initial"] = profile_json(inst.graph, s0);
    report["outcome"] = outcome_name(trace.outcome);
    report["steps"] = trace.steps.size();
    report["final"] = profile_json(
        inst.graph, trace.steps.empty() ? trace.initial : trace.steps.back().profile);
    if (trace.outcome == Trace::Outcome::ProfileRevisited)
        report["first_seen"] = trace.revisit_position;

    bool violated = false;
    if (audit_text == "phi-lex") {
        const auto audit = audit_phi_lex(inst.graph, trace, inst.spec);
        report["audit"] = {{"potential", "phi-lex"}, {"ok", audit.ok}};
        if (!audit.ok) {
            report["audit"]["step"] = audit.step;
            report["audit"]["before"] = audit.before->str();
            report["audit"]["after"] = audit.after->str();
            violated = true;
        }
    } else if (audit_text == "phi-majority") {
        const auto audit = audit_phi_majority(inst.graph, trace, inst.spec);
        report["audit"] = {{"potential", "phi-majority"}, {"ok", audit.ok}};
        if (!audit.ok) {
            report["audit"]["step"] = audit.step;
            report["audit"]["detail"] = audit.detail;
            violated = true;
        }
    }

    const int expect_code = note_expectation(report, expect, expect == outcome_name(trace.outcome));
    emit(report, out_path);
    if (violated) return kExitViolation;
    return expect_code;
}

int cmd_enumerate(const std::string& path, const std::string& mode_text, int jobs,
                  const std::string& digraph_path, const std::string& expect,
                  const std::string& out_path) {
    const Instance inst = load_instance(path);
    const auto mode = parse_mode(mode_text);
    if (!mode) throw CLI::ValidationError("--mode must be ib or ia");

    const ProfileSpace space(inst.graph);
    const auto equilibria = find_equilibria(inst.graph, inst.spec, *mode, jobs);
    if (!digraph_path.empty())
        write_digraph(inst.graph, build_improvement_digraph(inst.graph, inst.spec, *mode, jobs),
                      digraph_path);

    ordered_json report;
    report["command"] = "enumerate";
    report["instance"] = instance_json(inst);
    report["parameters"] = {{"mode", mode_text}, {"jobs", jobs}, {"input", path}};
    report["profile_count"] = space.size();
    report["equilibrium_count"] = equilibria.size();
    report["equilibria"] = ordered_json::array();
    for (const auto& s : equilibria) report["equilibria"].push_back(profile_json(inst.graph, s));

    const std::string found = equilibria.empty() ? "no-equilibrium" : "equilibrium";
    const int expect_code = note_expectation(report, expect, expect == found);
    emit(report, out_path);
    return expect_code;
}

int cmd_fip(const std::string& path, const std::string& mode_text, int jobs,
            const std::string& digraph_path, const std::string& expect,
            const std::string& out_path) {
    const Instance inst = load_instance(path);
    const auto mode = parse_mode(mode_text);
    if (!mode) throw CLI::ValidationError("--mode must be ib or ia");

    const auto rep = fip_check(inst.graph, inst.spec, *mode, jobs);
    if (!digraph_path.empty())
        write_digraph(inst.graph, build_improvement_digraph(inst.graph, inst.spec, *mode, jobs),
                      digraph_path);

    ordered_json report;
    report["command"] = "fip";
    report["instance"] = instance_json(inst);
    report["parameters"] = {{"mode", mode_text}, {"jobs", jobs}, {"input", path}};
    report["profile_count"] = rep.profile_count;
    report["holds"] = rep.holds;
    if (!rep.holds) {
        report["witness"] = {{"start", profile_json(inst.graph, *rep.cycle_start)},
                             {"moves", ordered_json::array()}};
        for (const Move& m : rep.cycle) report["witness"]["moves"].push_back(move_json(inst.graph, m));
    }

    const int expect_code = note_expectation(report, expect, expect == (rep.holds ? "holds" : "fails"));
    emit(report, out_path);
    return expect_code;
}

int cmd_bounds(int delta, const std::string& out_path) {
    const Rational l = lower_bound_L(delta);
    const Rational u = upper_bound_U(delta);
    ordered_json report;
    report["command"] = "bounds";
    report["delta"] = delta;
    report["L"] = l.str();
    report["U"] = u.str();
    report["increasing"] = "lambda >= " + l.str();
    report["decreasing"] = "lambda <= " + u.str();
    emit(report, out_path);
    return kExitOk;
}

int cmd_gen(const std::string& family, int degree, int size, std::uint64_t seed,
            int max_resources, int max_agents, const std::string& red_fraction_text,
            const std::string& lambda_text, const std::string& slope_text,
            const std::string& out_path) {
    const Rational lambda = Rational::parse(lambda_text);
    std::optional<UtilitySpec> spec;
    if (slope_text.empty()) spec = UtilitySpec::abstract_peak(lambda);
    else spec = UtilitySpec::linear(lambda, Rational::parse(slope_text));

    std::optional<AccessibilityGraph> graph;
    if (family == "no-ibe") graph = gen_no_ibe(degree);
    else if (family == "no-iae-tree") graph = gen_no_iae_binary_tree();
    else if (family == "chaser") graph = gen_no_iae_chaser(degree);
    else if (family == "cycle") graph = gen_cycle(size, seed);
    else if (family == "random-bintree")
        graph = gen_random_binary_tree(seed, max_resources, max_agents,
                                       Rational::parse(red_fraction_text));
    else
        throw CLI::ValidationError(
            "--family must be no-ibe, no-iae-tree, chaser, cycle or random-bintree");

    const Instance inst{std::move(*graph), std::move(*spec), std::nullopt};
    if (out_path.empty()) std::cout << instance_to_json(inst);
    else save_instance(inst, out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"resource selection game toolkit"};
    app.require_subcommand(1);

    std::string instance_path, out_path, digraph_path, expect;
    std::string mode_text = "ib", scheduler_text = "first", audit_text = "none";
    std::uint64_t seed = 0, max_steps = 100000;
    int jobs = 1, delta = 3, degree = 3, size = 4;
    int max_resources = 5, max_agents = 9;
    std::string family, red_fraction_text = "1/2", lambda_text = "1/2", slope_text;

    auto* run_cmd = app.add_subcommand("run", "play improvement dynamics from a profile");
    run_cmd->add_option("instance", instance_path, "instance file")->required();
    run_cmd->add_option("--mode", mode_text, "ib or ia");
    run_cmd->add_option("--scheduler", scheduler_text, "first, round-robin or random");
    run_cmd->add_option("--seed", seed, "seed for the random scheduler");
    run_cmd->add_option("--max-steps", max_steps, "step limit");
    run_cmd->add_option("--audit", audit_text, "phi-lex, phi-majority or none");
    run_cmd->add_option("--expect", expect, "expected outcome name");
    run_cmd->add_option("-o,--output", out_path, "report file (default stdout)");

    auto* enum_cmd = app.add_subcommand("enumerate", "list every equilibrium");
    enum_cmd->add_option("instance", instance_path, "instance file")->required();
    enum_cmd->add_option("--mode", mode_text, "ib or ia");
    enum_cmd->add_option("--jobs", jobs, "worker threads");
    enum_cmd->add_option("--emit-digraph", digraph_path, "write the improvement digraph as DOT");
    enum_cmd->add_option("--expect", expect, "equilibrium or no-equilibrium");
    enum_cmd->add_option("-o,--output", out_path, "report file (default stdout)");

    auto* fip_cmd = app.add_subcommand("fip", "decide the finite-improvement property");
    fip_cmd->add_option("instance", instance_path, "instance file")->required();
    fip_cmd->add_option("--mode", mode_text, "ib or ia");
    fip_cmd->add_option("--jobs", jobs, "worker threads");
    fip_cmd->add_option("--emit-digraph", digraph_path, "write the improvement digraph as DOT");
    fip_cmd->add_option("--expect", expect, "holds or fails");
    fip_cmd->add_option("-o,--output", out_path, "report file (default stdout)");

    auto* bounds_cmd = app.add_subcommand("bounds", "print the regime thresholds");
    bounds_cmd->add_option("--delta", delta, "maximum resource degree")->required();
    bounds_cmd->add_option("-o,--output", out_path, "report file (default stdout)");

    auto* gen_cmd = app.add_subcommand("gen", "write a generated instance file");
    gen_cmd->add_option("--family", family,
                        "no-ibe, no-iae-tree, chaser, cycle or random-bintree")
        ->required();
    gen_cmd->add_option("--degree", degree, "resource degree (no-ibe, chaser)");
    gen_cmd->add_option("--size", size, "ring size (cycle)");
    gen_cmd->add_option("--seed", seed, "seed (cycle coloring, random-bintree)");
    gen_cmd->add_option("--max-resources", max_resources, "cap (random-bintree)");
    gen_cmd->add_option("--max-agents", max_agents, "cap (random-bintree)");
    gen_cmd->add_option("--red-fraction", red_fraction_text, "red probability (random-bintree)");
    gen_cmd->add_option("--lambda", lambda_text, "utility peak, rational in (0,1)");
    gen_cmd->add_option("--slope", slope_text, "linear slope; omitted means abstract shape");
    gen_cmd->add_option("-o,--output", out_path, "instance file (default stdout)");

    try {
        app.parse(argc, argv);
        if (run_cmd->parsed())
            return cmd_run(instance_path, mode_text, scheduler_text, seed, max_steps, audit_text,
                           expect, out_path);
        if (enum_cmd->parsed())
            return cmd_enumerate(instance_path, mode_text, jobs, digraph_path, expect, out_path);
        if (fip_cmd->parsed())
            return cmd_fip(instance_path, mode_text, jobs, digraph_path, expect, out_path);
        if (bounds_cmd->parsed()) return cmd_bounds(delta, out_path);
        if (gen_cmd->parsed())
            return cmd_gen(family, degree, size, seed, max_resources, max_agents,
                           red_fraction_text, lambda_text, slope_text, out_path);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        // Library-level refusals, e.g. an audit outside its regime: the message
        // names the violated bound.
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
