#include <benchmark/benchmark.h>

#include <random>

#include "deblur/deblur.hpp"

namespace {

using namespace deblur;

Image noise_image(int size) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    Image image(size, size);
    for (double& v : image.pixels()) v = dist(rng);
    return convolve(image, gaussian_kernel(5, 1.0));
}

void BM_Convolve15(benchmark::State& state) {
    const Image image = noise_image(static_cast<int>(state.range(0)));
    const BlurKernel kernel = gaussian_kernel(15, 2.1);
    for (auto _ : state) benchmark::DoNotOptimize(convolve(image, kernel));
    state.SetItemsProcessed(state.iterations() * image.size());
}
BENCHMARK(BM_Convolve15)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Features(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    std::vector<double> patch(static_cast<std::size_t>(k) * k);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (double& v : patch) v = dist(rng);
    for (auto _ : state) benchmark::DoNotOptimize(quantize(features(patch, k), QuantConfig{}));
}
BENCHMARK(BM_Features)->Arg(7)->Arg(21);

void BM_Accumulate(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const Image sharp = noise_image(128);
    const Image blurred = convolve(sharp, gaussian_kernel(15, 2.1));
    for (auto _ : state) {
        AccumulatorSet acc(k, {});
        accumulate_pair(sharp, blurred, 1, acc);
        benchmark::DoNotOptimize(acc.total_count());
    }
    state.SetItemsProcessed(state.iterations() * sharp.size());
}
BENCHMARK(BM_Accumulate)->Arg(7)->Arg(13)->Arg(21)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const Image sharp = noise_image(96);
    AccumulatorSet acc(k, {});
    accumulate_pair(sharp, convolve(sharp, gaussian_kernel(5, 1.0)), 1, acc);
    const Accumulator* fullest = &acc.buckets()[0];
    for (const auto& b : acc.buckets())
        if (b.count > fullest->count) fullest = &b;
    for (auto _ : state) benchmark::DoNotOptimize(solve(*fullest, k, 1e-8));
}
BENCHMARK(BM_Solve)->Arg(7)->Arg(13)->Arg(21)->Unit(benchmark::kMillisecond);

void BM_Restore(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const Image image = noise_image(256);
    const FilterBank bank = FilterBank::identity(k);
    for (auto _ : state) benchmark::DoNotOptimize(restore(image, bank));
    state.SetItemsProcessed(state.iterations() * image.size());
}
BENCHMARK(BM_Restore)->Arg(7)->Arg(13)->Arg(21)->Unit(benchmark::kMillisecond);

void BM_MetricQ(benchmark::State& state) {
    const Image image = noise_image(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(metric_q(image));
    state.SetItemsProcessed(state.iterations() * image.size());
}
BENCHMARK(BM_MetricQ)->Arg(256)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
