// Serial reference vs OpenMP kernels on the shapes the pipeline sees:
// nearest_rows for SOM activations / final labelling (28-D rows against a
// handful of nodes, or 2-D scores against k centers) and the O(n^2)
// silhouette used by the k sweep.

#include <benchmark/benchmark.h>

#include <vector>

#include "somkm/kernels.hpp"
#include "somkm/random.hpp"

namespace {

using namespace somkm;

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    Rng rng(seed);
    Matrix m(rows, cols);
    for (double& v : m.data()) v = rng.uniform01();
    return m;
}

template <bool Parallel>
void BM_NearestRows(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto k = static_cast<std::size_t>(state.range(1));
    const auto d = static_cast<std::size_t>(state.range(2));
    const Matrix points = random_matrix(n, d, 1);
    const Matrix centers = random_matrix(k, d, 2);
    for (auto _ : state) {
        auto r = Parallel ? kernels::parallel::nearest_rows(points, centers)
                          : kernels::serial::nearest_rows(points, centers);
        benchmark::DoNotOptimize(r.index.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * k));
}

template <bool Parallel>
void BM_Silhouette(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto k = static_cast<std::size_t>(state.range(1));
    const Matrix points = random_matrix(n, 2, 3);
    std::vector<int> labels(n);
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = static_cast<int>(i % k);
        ++sizes[i % k];
    }
    const kernels::SilhouetteInput in{points, labels, sizes};
    for (auto _ : state) {
        auto s = Parallel ? kernels::parallel::silhouette_samples(in) : kernels::serial::silhouette_samples(in);
        benchmark::DoNotOptimize(s.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}

void nearest_args(benchmark::internal::Benchmark* b) {
    b->Args({2000, 8, 28})->Args({20000, 8, 28})->Args({20000, 24, 2})->Args({200000, 24, 2});
}

void silhouette_args(benchmark::internal::Benchmark* b) {
    b->Args({88, 24})->Args({1000, 8})->Args({5000, 8});
}

}  // namespace

BENCHMARK(BM_NearestRows<false>)->Name("nearest_rows/serial")->Apply(nearest_args);
BENCHMARK(BM_NearestRows<true>)->Name("nearest_rows/parallel")->Apply(nearest_args)->UseRealTime();
BENCHMARK(BM_Silhouette<false>)->Name("silhouette/serial")->Apply(silhouette_args);
BENCHMARK(BM_Silhouette<true>)->Name("silhouette/parallel")->Apply(silhouette_args)->UseRealTime();

BENCHMARK_MAIN();
