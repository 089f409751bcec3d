// Serial reference vs OpenMP kernels on large synthetic spectra.
//
//   ./qbg_bench --benchmark_filter=power_sums
//   OMP_NUM_THREADS=8 ./qbg_bench

#include <benchmark/benchmark.h>
#include <omp.h>

#include <cmath>
#include <random>
#include <vector>

#include "qbg/kernels.hpp"

namespace k = qbg::kernels;

namespace {

struct Inputs {
  std::vector<double> levels, log_deg, log_weights, probs;
};

const Inputs& inputs(std::size_t n) {
  static std::size_t cached_n = 0;
  static Inputs in;
  if (cached_n == n) return in;
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  in.levels.resize(n);
  in.log_deg.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    in.levels[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n);
    in.log_deg[i] = std::log(1.0 + static_cast<double>(i % 7));
  }
  in.log_weights.resize(n);
  const std::vector<double> coeffs{0.8, -0.3, 0.1, 0.05};
  k::serial::polynomial_log_weights(in.levels, in.log_deg, coeffs, 0.0, in.log_weights);
  in.probs.resize(n);
  k::serial::softmax(in.log_weights, in.probs);
  cached_n = n;
  return in;
}

void set_counters(benchmark::State& state, std::size_t n) {
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
  state.counters["threads"] = omp_get_max_threads();
}

const std::vector<double> kCoeffs{0.8, -0.3, 0.1, 0.05};

template <bool Parallel>
void polynomial_log_weights(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto& in = inputs(n);
  std::vector<double> out(n);
  for (auto _ : state) {
    if constexpr (Parallel)
      k::parallel::polynomial_log_weights(in.levels, in.log_deg, kCoeffs, 0.1, out);
    else
      k::serial::polynomial_log_weights(in.levels, in.log_deg, kCoeffs, 0.1, out);
    benchmark::DoNotOptimize(out.data());
  }
  set_counters(state, n);
}

template <bool Parallel>
void log_sum_exp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto& in = inputs(n);
  for (auto _ : state) {
    const double v = Parallel ? k::parallel::log_sum_exp(in.log_weights)
                              : k::serial::log_sum_exp(in.log_weights);
    benchmark::DoNotOptimize(v);
  }
  set_counters(state, n);
}

template <bool Parallel>
void softmax(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto& in = inputs(n);
  std::vector<double> out(n);
  for (auto _ : state) {
    const double v = Parallel ? k::parallel::softmax(in.log_weights, out)
                              : k::serial::softmax(in.log_weights, out);
    benchmark::DoNotOptimize(v);
    benchmark::DoNotOptimize(out.data());
  }
  set_counters(state, n);
}

template <bool Parallel>
void power_sums(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto& in = inputs(n);
  std::vector<double> out(4);
  for (auto _ : state) {
    if constexpr (Parallel)
      k::parallel::power_sums(in.probs, in.levels, 0.0, out);
    else
      k::serial::power_sums(in.probs, in.levels, 0.0, out);
    benchmark::DoNotOptimize(out.data());
  }
  set_counters(state, n);
}

template <bool Parallel>
void monomial_covariance(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto& in = inputs(n);
  std::vector<double> means(4), out(16);
  k::serial::power_sums(in.probs, in.levels, 0.0, means);
  for (auto _ : state) {
    if constexpr (Parallel)
      k::parallel::monomial_covariance(in.probs, in.levels, means, out);
    else
      k::serial::monomial_covariance(in.probs, in.levels, means, out);
    benchmark::DoNotOptimize(out.data());
  }
  set_counters(state, n);
}

}  // namespace

#define QBG_KERNEL_BENCH(fn)                                                              \
  BENCHMARK(fn<false>)->Name(#fn "/serial")->RangeMultiplier(10)->Range(100000, 10000000) \
      ->Unit(benchmark::kMillisecond)->UseRealTime();                                     \
  BENCHMARK(fn<true>)->Name(#fn "/parallel")->RangeMultiplier(10)->Range(100000, 10000000) \
      ->Unit(benchmark::kMillisecond)->UseRealTime()

QBG_KERNEL_BENCH(polynomial_log_weights);
QBG_KERNEL_BENCH(log_sum_exp);
QBG_KERNEL_BENCH(softmax);
QBG_KERNEL_BENCH(power_sums);
QBG_KERNEL_BENCH(monomial_covariance);

BENCHMARK_MAIN();
