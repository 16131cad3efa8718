#include <nonlocal_evolve/examples.hpp>
#include <nonlocal_evolve/solver_inhom.hpp>

#include <benchmark/benchmark.h>

#include <cmath>

using namespace nlevolve;

namespace {

void BM_FdResolvent(benchmark::State& state)
{
    FdLaplacianModel const m(static_cast<std::size_t>(state.range(0)));
    CVector const v = m.project([](double x) { return x * (1 - x); });
    Complex const z(3.0, -40.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(m.resolvent_apply(z, v));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FdResolvent)->RangeMultiplier(4)->Range(64, 16384)->Complexity(benchmark::oN);

void BM_GreenResolvent(benchmark::State& state)
{
    GreenFunctionModel const m(static_cast<std::size_t>(state.range(0)));
    CVector const v = m.project([](double x) { return x > 0 ? x * std::log(x) : 0.0; });
    Complex const z(3.0, -40.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(m.resolvent_apply(z, v));
}
BENCHMARK(BM_GreenResolvent)->Arg(16)->Arg(32)->Arg(64);

void BM_SolveHomogeneous(benchmark::State& state)
{
    FdLaplacianModel const m(256);
    NonlocalSpec const nl{{0.5, 0.3}, {0.2, 0.4}, 1.0};
    CVector const u0 = m.project([](double x) { return std::sin(kPi * x); });
    PlanOptions o;
    o.smoothness = 1;
    SincPlan const plan = make_plan(m.spectral(), nl, static_cast<int>(state.range(0)), o);
    unsigned const threads = static_cast<unsigned>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_homogeneous(plan, m, u0, 0.3, threads));
}
BENCHMARK(BM_SolveHomogeneous)->Args({64, 1})->Args({256, 1})->Args({256, 4})->UseRealTime();

void BM_Example3Full(benchmark::State& state)
{
    Problem const p = make_example(3);
    PlanOptions o;
    o.rule = StepRule::InverseSqrtN;
    o.smoothness = 1;
    SincPlan const plan = make_plan(p.model->spectral(), p.nonlocal, static_cast<int>(state.range(0)), o);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_full(plan, *p.model, p.u0, &*p.source, 0.3));
}
BENCHMARK(BM_Example3Full)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
