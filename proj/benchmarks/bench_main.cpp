#include <benchmark/benchmark.h>

#include "ftmi/capacity.hpp"
#include "ftmi/grid_mi.hpp"
#include "ftmi/mercer.hpp"

namespace {

const ftmi::KernelSpec kSignal = ftmi::KernelSpec::sinc_bandlimited(1.0, 5.0);
const ftmi::NoiseSpec kNoise = ftmi::NoiseSpec::colored(ftmi::KernelSpec::exponential_ou(1.0, 1.0));

void BM_DiscreteMI(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto grid = ftmi::SamplingGrid::uniform_left_endpoint(1.0, n);
    const auto kx = ftmi::build_covariance(kSignal, grid);
    const auto kn = ftmi::build_covariance(kNoise, grid);
    for (auto _ : state) {
        auto r = ftmi::discrete_mi(kx, kn, 1.0);
        benchmark::DoNotOptimize(r.value_nats);
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_DiscreteMI)->RangeMultiplier(2)->Range(64, 2048)->Complexity();

void BM_CovarianceAssembly(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto grid = ftmi::SamplingGrid::uniform_left_endpoint(1.0, n);
    for (auto _ : state) {
        auto kx = ftmi::build_covariance(kSignal, grid);
        benchmark::DoNotOptimize(kx.mat(0, 0));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_CovarianceAssembly)->RangeMultiplier(2)->Range(64, 2048)->Complexity();

void BM_ExponentialSpectrum(benchmark::State& state) {
    const int K = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto s = ftmi::exponential_spectrum(1.0, 1.0, 2.0, K);
        benchmark::DoNotOptimize(s.pairs.back().lambda);
    }
    state.SetComplexityN(K);
}
BENCHMARK(BM_ExponentialSpectrum)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_NystromSpectrum(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto s = ftmi::nystrom_spectrum(kSignal, 1.0, n);
        benchmark::DoNotOptimize(s.pairs.front().lambda);
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_NystromSpectrum)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_AvgCapacityQuadrature(benchmark::State& state) {
    for (auto _ : state) {
        double c = ftmi::avg_capacity_quadrature(kSignal, kNoise);
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_AvgCapacityQuadrature);

} // namespace

BENCHMARK_MAIN();
