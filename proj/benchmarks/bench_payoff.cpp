#include <benchmark/benchmark.h>

#include <vector>

#include "ivr/calibration.hpp"
#include "ivr/payoff.hpp"
#include "ivr/rng.hpp"

namespace {

std::vector<double> random_bits(int horizon, std::uint64_t seed) {
  ivr::Rng rng(seed);
  std::vector<double> v(static_cast<std::size_t>(horizon));
  for (double& x : v) x = rng.next_sign();
  return v;
}

void BM_payoff_value(benchmark::State& state) {
  const int T = static_cast<int>(state.range(0));
  const std::vector<double> seq = random_bits(T, 1);
  const ivr::Alpha alpha(1.96);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ivr::payoff_value(seq, alpha));
  }
  state.SetComplexityN(T);
}
BENCHMARK(BM_payoff_value)->Arg(64)->Arg(256)->Arg(389)->Arg(1024)->Complexity();

void BM_payoff_dp_with_backtrack(benchmark::State& state) {
  const int T = static_cast<int>(state.range(0));
  const std::vector<double> seq = random_bits(T, 2);
  const ivr::Alpha alpha(1.96);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ivr::payoff_dp(seq, alpha).value);
  }
}
BENCHMARK(BM_payoff_dp_with_backtrack)->Arg(389);

void BM_aligned_payoff_value(benchmark::State& state) {
  const int T = static_cast<int>(state.range(0));
  const std::vector<double> seq = random_bits(T, 3);
  const ivr::Alpha alpha(2.8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ivr::aligned_payoff_value(seq, alpha));
  }
  state.SetComplexityN(T);
}
BENCHMARK(BM_aligned_payoff_value)->Arg(64)->Arg(256)->Arg(1024)->Arg(4096)->Complexity();

void BM_mc_mean_payoff(benchmark::State& state) {
  const int T = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ivr::mc_mean_payoff(T, ivr::Alpha(1.96), 20, 7).mean);
  }
}
BENCHMARK(BM_mc_mean_payoff)->Arg(128)->Arg(389);

}  // namespace

BENCHMARK_MAIN();
