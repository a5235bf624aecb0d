#include <benchmark/benchmark.h>

#include <map>

#include "nehari/a2.hpp"
#include "nehari/generators.hpp"
#include "nehari/hankel.hpp"

// Each kernel runs twice: argument 0 is the serial reference, 1 the OpenMP path.

using namespace nehari;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

const SchurFunction& counterexample(std::size_t n)
{
    static std::map<std::size_t, SchurFunction> cache;
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, make_builtin("counterexample").sample(n)).first;
    return it->second;
}

void BM_rotation_sweep(benchmark::State& state)
{
    const auto& phi = counterexample(8192);
    const auto arcs = ArcFamily::dyadic(8192, 9);
    const auto cs = uniform_c_grid(16);
    for (auto _ : state)
        benchmark::DoNotOptimize(rotation_sweep(phi, cs, arcs, exec_of(state)));
}

void BM_matrix_a2(benchmark::State& state)
{
    const auto& phi = counterexample(16384);
    const auto arcs = ArcFamily::dyadic(16384, 10);
    for (auto _ : state)
        benchmark::DoNotOptimize(matrix_a2_scalar_form(phi, arcs, exec_of(state)));
}

void BM_solve_batch(benchmark::State& state)
{
    const auto s = build_scattering(counterexample(4096));
    std::vector<GridFunction> eps;
    for (int t = 0; t < 32; ++t) {
        const double r = 0.9 * (t + 1) / 32.0;
        eps.push_back(GridFunction::sample(4096, [r](cplx z) { return r * z * z; }));
    }
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_batch(s, eps, exec_of(state)));
}

void BM_hankel_norm_curve(benchmark::State& state)
{
    const auto s = build_scattering(make_builtin("rz-outer").sample(2048));
    const std::vector<std::size_t> ms = {32, 64, 128, 256, 512};
    for (auto _ : state)
        benchmark::DoNotOptimize(hankel_norm_curve(s.f0(), ms, exec_of(state)));
}

void BM_form_probe(benchmark::State& state)
{
    const auto& phi = counterexample(1024);
    for (auto _ : state)
        benchmark::DoNotOptimize(matrix_a2_form_test(phi, 200, 64, 1, exec_of(state)));
}

} // namespace

BENCHMARK(BM_rotation_sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_matrix_a2)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_solve_batch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_hankel_norm_curve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_form_probe)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
