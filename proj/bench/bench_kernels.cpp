#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "gridsynth/kernels.hpp"
#include "gridsynth/rng.hpp"

using namespace gridsynth;

namespace {

std::vector<std::vector<double>> random_matrix(int rows, int cols, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<double>> m(rows, std::vector<double>(cols));
    for (auto& row : m) {
        for (auto& v : row) v = 10.0 + rng.next_gaussian();
    }
    return m;
}

void bm_assign_serial(benchmark::State& state) {
    const auto points = random_matrix(static_cast<int>(state.range(0)), 61, 1);
    const auto centroids = random_matrix(8, 61, 2);
    std::vector<int> labels;
    for (auto _ : state) {
        kernels::assign_clusters_serial(points, centroids, labels);
        benchmark::DoNotOptimize(labels);
    }
}

void bm_assign_omp(benchmark::State& state) {
    const auto points = random_matrix(static_cast<int>(state.range(0)), 61, 1);
    const auto centroids = random_matrix(8, 61, 2);
    std::vector<int> labels;
    for (auto _ : state) {
        kernels::assign_clusters_omp(points, centroids, labels);
        benchmark::DoNotOptimize(labels);
    }
}

void bm_rescale_serial(benchmark::State& state) {
    const auto data = random_matrix(static_cast<int>(state.range(0)), 61, 3);
    std::vector<const std::vector<double>*> patterns;
    for (const auto& p : data) patterns.push_back(&p);
    const std::vector<double> lo(data.size(), 90.0), hi(data.size(), 110.0);
    std::vector<std::vector<double>> out;
    for (auto _ : state) {
        kernels::rescale_rows_serial(lo, hi, patterns, out);
        benchmark::DoNotOptimize(out);
    }
}

void bm_rescale_omp(benchmark::State& state) {
    const auto data = random_matrix(static_cast<int>(state.range(0)), 61, 3);
    std::vector<const std::vector<double>*> patterns;
    for (const auto& p : data) patterns.push_back(&p);
    const std::vector<double> lo(data.size(), 90.0), hi(data.size(), 110.0);
    std::vector<std::vector<double>> out;
    for (auto _ : state) {
        kernels::rescale_rows_omp(lo, hi, patterns, out);
        benchmark::DoNotOptimize(out);
    }
}

void bm_mix_serial(benchmark::State& state) {
    const auto reference = random_matrix(36, static_cast<int>(state.range(0)), 5);
    auto weights = random_matrix(16, 36, 6);
    std::vector<std::vector<double>> farms;
    for (auto _ : state) {
        kernels::mix_variations_serial(weights, reference, farms);
        benchmark::DoNotOptimize(farms);
    }
}

void bm_mix_omp(benchmark::State& state) {
    const auto reference = random_matrix(36, static_cast<int>(state.range(0)), 5);
    auto weights = random_matrix(16, 36, 6);
    std::vector<std::vector<double>> farms;
    for (auto _ : state) {
        kernels::mix_variations_omp(weights, reference, farms);
        benchmark::DoNotOptimize(farms);
    }
}

void bm_noise_serial(benchmark::State& state) {
    const auto base = random_matrix(64, static_cast<int>(state.range(0)), 7);
    for (auto _ : state) {
        auto values = base;
        kernels::apply_noise_serial(values, 0.01, 9);
        benchmark::DoNotOptimize(values);
    }
}

void bm_noise_omp(benchmark::State& state) {
    const auto base = random_matrix(64, static_cast<int>(state.range(0)), 7);
    for (auto _ : state) {
        auto values = base;
        kernels::apply_noise_omp(values, 0.01, 9);
        benchmark::DoNotOptimize(values);
    }
}

}  // namespace

BENCHMARK(bm_assign_serial)->Arg(1000)->Arg(20000);
BENCHMARK(bm_assign_omp)->Arg(1000)->Arg(20000);
BENCHMARK(bm_rescale_serial)->Arg(1000)->Arg(20000);
BENCHMARK(bm_rescale_omp)->Arg(1000)->Arg(20000);
BENCHMARK(bm_mix_serial)->Arg(1000)->Arg(50000);
BENCHMARK(bm_mix_omp)->Arg(1000)->Arg(50000);
BENCHMARK(bm_noise_serial)->Arg(1000)->Arg(50000);
BENCHMARK(bm_noise_omp)->Arg(1000)->Arg(50000);

BENCHMARK_MAIN();
