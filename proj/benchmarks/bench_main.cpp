#include <benchmark/benchmark.h>

#include <random>

#include "rsg/analysis.hpp"
#include "rsg/bounds.hpp"
#include "rsg/dynamics.hpp"
#include "rsg/game.hpp"
#include "rsg/instances.hpp"

namespace {

using namespace rsg;

AccessibilityGraph tree_of_size(int agents) {
    // Resource-heavy caps keep branching agents common; seed fixed so every
    // run measures the same graph.
    return gen_random_binary_tree(42, agents + 4, agents, Rational(1, 2));
}

void RationalArithmetic(benchmark::State& state) {
    std::mt19937_64 rng(7);
    std::vector<Rational> xs;
    for (int i = 0; i < 256; ++i)
        xs.emplace_back(1 + static_cast<std::int64_t>(rng() % 999), 1000);
    Rational acc(0);
    std::size_t i = 0;
    for (auto _ : state) {
        acc = acc + xs[i % xs.size()] * xs[(i + 1) % xs.size()] - xs[(i + 2) % xs.size()];
        if (acc.den() > 1'000'000) acc = Rational(acc.num() % 97, 97);
        ++i;
    }
    benchmark::DoNotOptimize(acc);
}
BENCHMARK(RationalArithmetic);

void ReflectKey(benchmark::State& state) {
    const Rational lambda(11, 20);
    std::mt19937_64 rng(7);
    std::vector<Rational> xs;
    for (int i = 0; i < 256; ++i)
        xs.emplace_back(1 + static_cast<std::int64_t>(rng() % 999), 1000);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(reflect(xs[i % xs.size()], lambda));
        ++i;
    }
}
BENCHMARK(ReflectKey);

void ImprovingMoves(benchmark::State& state) {
    const auto g = tree_of_size(static_cast<int>(state.range(0)));
    const auto spec = UtilitySpec::abstract_peak(Rational(2, 5));
    const auto profiles = enumerate_profiles(g);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            improving_moves(g, profiles[i % profiles.size()], spec, Mode::ImpactAware));
        ++i;
    }
}
BENCHMARK(ImprovingMoves)->Arg(6)->Arg(9)->Arg(12);

void BuildDigraph(benchmark::State& state) {
    const auto g = tree_of_size(static_cast<int>(state.range(0)));
    const auto spec = UtilitySpec::abstract_peak(Rational(2, 5));
    for (auto _ : state)
        benchmark::DoNotOptimize(build_improvement_digraph(g, spec, Mode::ImpactAware));
    state.counters["profiles"] = static_cast<double>(ProfileSpace(g).size());
}
BENCHMARK(BuildDigraph)->Arg(6)->Arg(9)->Arg(12);

void FipCheck(benchmark::State& state) {
    const auto g = tree_of_size(static_cast<int>(state.range(0)));
    const auto spec = UtilitySpec::abstract_peak(Rational(2, 5));
    for (auto _ : state) benchmark::DoNotOptimize(fip_check(g, spec, Mode::ImpactAware));
}
BENCHMARK(FipCheck)->Arg(6)->Arg(9)->Arg(12);

void FindEquilibria(benchmark::State& state) {
    const auto g = tree_of_size(static_cast<int>(state.range(0)));
    const auto spec = UtilitySpec::abstract_peak(Rational(2, 5));
    for (auto _ : state)
        benchmark::DoNotOptimize(find_equilibria(g, spec, Mode::ImpactAware));
}
BENCHMARK(FindEquilibria)->Arg(6)->Arg(9)->Arg(12);

void RunOscillation(benchmark::State& state) {
    const auto g = gen_no_ibe(static_cast<int>(state.range(0)));
    const auto spec = UtilitySpec::abstract_peak(lower_bound_L(static_cast<int>(state.range(0))) -
                                                 Rational(1, 1000));
    StrategyProfile s0;
    for (AgentId a = 0; a < g.num_agents(); ++a) s0.choice.push_back(g.accessible(a)[0]);
    for (auto _ : state)
        benchmark::DoNotOptimize(run(g, s0, spec, Mode::ImpactBlind,
                                     SchedulerKind::FirstImproving, 0, 1000));
}
BENCHMARK(RunOscillation)->Arg(3)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
