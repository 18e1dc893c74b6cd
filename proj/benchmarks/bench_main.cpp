#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "transport1d/characteristics.hpp"
#include "transport1d/envelope.hpp"
#include "transport1d/field.hpp"
#include "transport1d/potential.hpp"
#include "transport1d/solver.hpp"

using namespace transport1d;

namespace {

FieldPair field(const char* name, std::size_t n) {
    const auto s = builtin_scenario(name);
    return sample_scenario(s, scenario_grid(s, n, n));
}

void BM_UpperEnvelope(benchmark::State& state) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> step(0.0, 1.0);
    std::vector<double> f(static_cast<std::size_t>(state.range(0)));
    double acc = 0.0;
    for (auto& v : f) v = acc += step(rng);
    for (auto _ : state) benchmark::DoNotOptimize(upper_decreasing_envelope(f));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_UpperEnvelope)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity();

void BM_BuildPotential(benchmark::State& state) {
    const auto f = field("positive-b", static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(build_potential(f));
}
BENCHMARK(BM_BuildPotential)->Arg(129)->Arg(257)->Arg(513)->Unit(benchmark::kMillisecond);

void BM_LevelCurve(benchmark::State& state) {
    const auto f = field("vacuum-patch", static_cast<std::size_t>(state.range(0)));
    const auto p = build_potential(f);
    for (auto _ : state) benchmark::DoNotOptimize(level_curve(p, f.grid.t(f.grid.nt() * 3 / 4), 1.3, f.b_sup));
}
BENCHMARK(BM_LevelCurve)->Arg(129)->Arg(257)->Arg(513);

void BM_Solve(benchmark::State& state) {
    const auto s = builtin_scenario("oscillating-sign");
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto f = sample_scenario(s, scenario_grid(s, n, n));
    const auto p = build_potential(f);
    for (auto _ : state) benchmark::DoNotOptimize(solve(p, f, s.boundary));
}
BENCHMARK(BM_Solve)->Arg(65)->Arg(129)->Arg(257)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
