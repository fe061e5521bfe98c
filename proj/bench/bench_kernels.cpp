// Serial reference vs OpenMP kernels. Run with OMP_NUM_THREADS set to compare.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "oklim/green.hpp"
#include "oklim/kernels.hpp"

using namespace oklim;
using kernels::Exec;

namespace {

std::vector<kernels::Charge> random_charges(int dim, int n) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<kernels::Charge> c(n);
    for (auto& q : c) {
        for (int a = 0; a < dim; ++a)
            q.position[a] = u(rng);
        q.mass = 0.5 + u(rng);
    }
    return c;
}

std::vector<kernels::Ball> random_balls(int dim, int n) {
    std::vector<kernels::Ball> b;
    for (const auto& q : random_charges(dim, n))
        b.push_back({q.position, q.mass, 0.01});
    return b;
}

template <Exec E>
void interaction_energy(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const auto charges = random_charges(dim, static_cast<int>(state.range(1)));
    const GreenFunction& G = green_function(dim);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::interaction_energy(G, charges, E));
    state.SetItemsProcessed(state.iterations() * state.range(1) * (state.range(1) - 1) / 2);
}

template <Exec E>
void interaction_gradient(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const auto charges = random_charges(dim, static_cast<int>(state.range(1)));
    const GreenFunction& G = green_function(dim);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::interaction_gradient(G, charges, E));
}

template <Exec E>
void spectral_sums(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const auto balls = random_balls(dim, 16);
    const int cutoff = static_cast<int>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::screened_spectral_sums(dim, balls, 3.14159 * cutoff / 6.5, cutoff, E));
}

} // namespace

BENCHMARK(interaction_energy<Exec::serial>)->Args({2, 64})->Args({3, 64})->Args({3, 256});
BENCHMARK(interaction_energy<Exec::parallel>)->Args({2, 64})->Args({3, 64})->Args({3, 256});
BENCHMARK(interaction_gradient<Exec::serial>)->Args({2, 64})->Args({3, 64});
BENCHMARK(interaction_gradient<Exec::parallel>)->Args({2, 64})->Args({3, 64});
BENCHMARK(spectral_sums<Exec::serial>)->Args({2, 24})->Args({3, 24});
BENCHMARK(spectral_sums<Exec::parallel>)->Args({2, 24})->Args({3, 24});

BENCHMARK_MAIN();
