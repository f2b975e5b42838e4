// Parallel kernels against the serial reference implementations.

#include <random>

#include <benchmark/benchmark.h>

#include "dpinv/dirichlet.hpp"
#include "dpinv/kernels.hpp"
#include "dpinv/reference.hpp"

using namespace dpinv;

namespace {

std::vector<double> gaussian(std::size_t n) {
  std::mt19937_64 gen(n);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = nd(gen);
  return v;
}

constexpr std::size_t kDraws = 64;

void BM_BayesianMean_Parallel(benchmark::State& state) {
  const auto e = empirical_cdf(gaussian(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::bayesian_bootstrap_functional(e, Functional::mean(), kDraws, 1));
  state.SetItemsProcessed(state.iterations() * kDraws * state.range(0));
}

void BM_BayesianMean_Reference(benchmark::State& state) {
  const auto e = empirical_cdf(gaussian(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(reference::bayesian_bootstrap_functional(e, Functional::mean(), kDraws, 1));
  state.SetItemsProcessed(state.iterations() * kDraws * state.range(0));
}

void BM_BayesianMedian_Parallel(benchmark::State& state) {
  const auto e = empirical_cdf(gaussian(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::bayesian_bootstrap_functional(e, Functional::quantile(0.5), kDraws, 1));
  state.SetItemsProcessed(state.iterations() * kDraws * state.range(0));
}

void BM_BayesianMedian_Reference(benchmark::State& state) {
  const auto e = empirical_cdf(gaussian(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state)
    benchmark::DoNotOptimize(reference::bayesian_bootstrap_functional(e, Functional::quantile(0.5), kDraws, 1));
  state.SetItemsProcessed(state.iterations() * kDraws * state.range(0));
}

void BM_FrequentistMean_Parallel(benchmark::State& state) {
  const auto d = gaussian(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::frequentist_bootstrap_functional(d, Functional::mean(), kDraws, 2));
  state.SetItemsProcessed(state.iterations() * kDraws * state.range(0));
}

void BM_FrequentistMean_Reference(benchmark::State& state) {
  const auto d = gaussian(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::frequentist_bootstrap_functional(d, Functional::mean(), kDraws, 2));
  state.SetItemsProcessed(state.iterations() * kDraws * state.range(0));
}

void BM_DirichletSample_Parallel(benchmark::State& state) {
  const DirichletParams params(0.5, make_prob_vector(std::vector<double>(static_cast<std::size_t>(state.range(0)), 1.0)));
  for (auto _ : state) benchmark::DoNotOptimize(sample(params, 3, 1000));
}

void BM_DirichletSample_Reference(benchmark::State& state) {
  const DirichletParams params(0.5, make_prob_vector(std::vector<double>(static_cast<std::size_t>(state.range(0)), 1.0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::dirichlet_sample(params, 3, 1000));
}

void BM_StickBreaking_Parallel(benchmark::State& state) {
  const DPParams params(static_cast<double>(state.range(0)), BaseCDF::gaussian(0, 1));
  for (auto _ : state) benchmark::DoNotOptimize(sample_stick_breaking_batch(params, 1e-8, 4, 200));
}

void BM_StickBreaking_Reference(benchmark::State& state) {
  const DPParams params(static_cast<double>(state.range(0)), BaseCDF::gaussian(0, 1));
  for (auto _ : state) benchmark::DoNotOptimize(reference::stick_breaking_batch(params, 1e-8, 4, 200));
}

}  // namespace

BENCHMARK(BM_BayesianMean_Parallel)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BayesianMean_Reference)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BayesianMedian_Parallel)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BayesianMedian_Reference)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FrequentistMean_Parallel)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FrequentistMean_Reference)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DirichletSample_Parallel)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DirichletSample_Reference)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StickBreaking_Parallel)->Arg(5)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StickBreaking_Reference)->Arg(5)->Arg(50)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
