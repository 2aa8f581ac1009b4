#include <benchmark/benchmark.h>

#include <vector>

#include "ivr/payoff.hpp"
#include "ivr/predictor.hpp"
#include "ivr/rng.hpp"

namespace {

std::vector<double> random_bits(int horizon, std::uint64_t seed) {
  ivr::Rng rng(seed);
  std::vector<double> v(static_cast<std::size_t>(horizon));
  for (double& x : v) x = rng.next_sign();
  return v;
}

void BM_mc_precompute(benchmark::State& state) {
  const int T = static_cast<int>(state.range(0));
  const ivr::Alpha alpha(1.96);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ivr::mc_precompute(T, alpha, seed++));
  }
}
BENCHMARK(BM_mc_precompute)->Arg(64)->Arg(256)->Arg(389);

// One full game amortizes the per-step stitching; payoff per step is the
// interesting number, so report time / T via the manual counter.
void BM_mc_game(benchmark::State& state) {
  const int T = static_cast<int>(state.range(0));
  const ivr::Alpha alpha(1.96);
  ivr::PredictorState st = ivr::mc_precompute(T, alpha, 11);
  const std::vector<double> seq = random_bits(T, 12);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ivr::run_predictor_game(st, seq).payoff);
  }
  state.SetItemsProcessed(state.iterations() * T);
}
BENCHMARK(BM_mc_game)->Arg(64)->Arg(256)->Arg(389);

void BM_aligned_game(benchmark::State& state) {
  const int T = static_cast<int>(state.range(0));
  const ivr::Alpha alpha(2.8);
  ivr::PredictorState st = ivr::aligned_precompute(T, alpha, 13);
  const std::vector<double> seq = random_bits(T, 14);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ivr::run_predictor_game(st, seq).payoff);
  }
  state.SetItemsProcessed(state.iterations() * T);
}
BENCHMARK(BM_aligned_game)->Arg(64)->Arg(256)->Arg(1024)->Arg(4096);

void BM_exact_game(benchmark::State& state) {
  const int T = static_cast<int>(state.range(0));
  const ivr::Alpha alpha(1.5);
  const std::vector<double> seq = random_bits(T, 15);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ivr::run_exact_game(alpha, seq).payoff);
  }
}
BENCHMARK(BM_exact_game)->Arg(8)->Arg(12);

}  // namespace
