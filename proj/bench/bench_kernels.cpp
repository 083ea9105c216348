// Serial reference against the OpenMP variant of each hot kernel.

#include "qfree/cayley.hpp"
#include "qfree/freeprob.hpp"
#include "qfree/kernels.hpp"
#include "qfree/pauli.hpp"
#include "qfree/repeval.hpp"

#include <benchmark/benchmark.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace qfree;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::omp; }

void label(benchmark::State& state) {
    state.SetLabel(exec_of(state) == Exec::serial ? "serial" : "omp x" + std::to_string(omp_threads()));
}

void BM_DerivativeMatrix(benchmark::State& state) {
    const auto model = pauli::symplectic_model(static_cast<int>(state.range(1)));
    const auto coords = pauli::coordinates(model, pauli::build_relations(model).f2);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::derivative_matrix(coords, model.letters, exec_of(state)));
    label(state);
}
BENCHMARK(BM_DerivativeMatrix)->ArgsProduct({{0, 1}, {2, 3}})->Unit(benchmark::kMillisecond);

void BM_LogEnergy(benchmark::State& state) {
    const auto mu = freeprob::SpectralMeasure::semicircle(1.0, 0.0, static_cast<std::size_t>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(freeprob::log_energy(mu, exec_of(state)));
    label(state);
}
BENCHMARK(BM_LogEnergy)->ArgsProduct({{0, 1}, {1000, 4000}})->Unit(benchmark::kMillisecond);

void BM_Compose(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(1));
    std::mt19937_64 rng(1);
    kernels::Perm a(n), b(n);
    std::iota(a.begin(), a.end(), 0);
    std::iota(b.begin(), b.end(), 0);
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(b.begin(), b.end(), rng);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::compose(a, b, exec_of(state)));
    label(state);
}
BENCHMARK(BM_Compose)->ArgsProduct({{0, 1}, {1 << 16, 1 << 20}});

void BM_Pentagon(benchmark::State& state) {
    const auto g = cayley::FiniteGroup::symmetric(4);
    for (auto _ : state) benchmark::DoNotOptimize(cayley::pentagon_check(g, false, exec_of(state)));
    label(state);
}
BENCHMARK(BM_Pentagon)->Arg(0)->Arg(1);

void BM_ClassicalBatch(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(repeval::verify_batch(2, pauli::Kind::symplectic, 20, 0, 1e-8, 1e-10, exec_of(state)));
    label(state);
}
BENCHMARK(BM_ClassicalBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
