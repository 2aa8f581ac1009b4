#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ivr/payoff.hpp"
#include "ivr/rng.hpp"
#include "ivr/sequence.hpp"

namespace ivr {

enum class PredictMode { exact, monte_carlo, aligned_fast };

// Distribution of completion magnitudes. Bit games use point_mass_one; the
// real-valued game samples magnitudes with mean one.
class MagnitudeModel {
 public:
  enum class Kind { point_mass_one, half_normal_mean_one, empirical };

  static MagnitudeModel point_mass_one();
  static MagnitudeModel half_normal_mean_one();
  // Nonnegative observed magnitudes, resampled uniformly. Mean must be
  // within 5% of one so the calibration story still applies.
  static MagnitudeModel empirical(std::vector<double> values);

  Kind kind() const { return kind_; }
  const std::vector<double>& values() const { return values_; }
  double sample(Rng& rng) const;
  std::string name() const;

 private:
  explicit MagnitudeModel(Kind kind) : kind_(kind) {}
  Kind kind_;
  std::vector<double> values_;
};

// Precomputed betting state for one horizon: per-step completions U_t of
// length T-1-t, their prefix heights, and best-partition values of all their
// suffixes. Reusable across games; observed-prefix stacks reset per game.
struct PredictorState {
  int horizon = 0;
  Alpha alpha{1.0};
  PredictMode mode = PredictMode::monte_carlo;
  std::uint64_t seed = 0;
  MagnitudeModel model = MagnitudeModel::point_mass_one();

  std::vector<std::vector<double>> completions;         // completions[t], len T-1-t
  std::vector<std::vector<double>> completion_heights;  // prefix sums, len T-t
  std::vector<std::vector<double>> suffix_payoffs;      // suffix m -> value, len T-t

  std::vector<double> observed;
  std::vector<double> observed_prefix;  // c[0] = 0
  std::vector<double> prefix_best;      // best partition value of observed prefix
  std::vector<double> sqrt_table;

  long clamp_count = 0;        // cumulative across games
  bool last_clamped = false;   // set by the last predict call
  int last_candidate_count = 0;

  void reset_observed();
};

// Completions drawn from substreams of seed: signs of U_t from split(2t),
// magnitudes from split(2t+1). Point-mass magnitudes consume no draws, so a
// real-valued state with point_mass_one matches the bit state bit-for-bit.
PredictorState mc_precompute(int horizon, Alpha alpha, std::uint64_t seed);
PredictorState aligned_precompute(int horizon, Alpha alpha, std::uint64_t seed);
PredictorState real_precompute(int horizon, Alpha alpha, std::uint64_t seed,
                               const MagnitudeModel& model);

// Test door: build a state around caller-supplied completions.
PredictorState make_predictor_state(int horizon, Alpha alpha, PredictMode mode,
                                    std::vector<std::vector<double>> completions,
                                    std::uint64_t seed = 0,
                                    MagnitudeModel model = MagnitudeModel::point_mass_one());

// Exact conditional-expectation bet at step t = |prefix| (enumerates all
// completions; refuses horizon > 16). Result lies in [-1, 1] up to float
// noise; an excursion beyond 1e-9 would be a logic error, not input error.
double exact_predict_step(std::span<const double> prefix, Alpha alpha, int horizon);

// One bet from precomputed state. prefix must be the first t observed
// values; the state re-syncs (and re-feeds) if the caller rewinds. Values
// are clamped to [-1, 1] with a counter; they can only exceed it by float
// noise in bit games, and materially in real-valued games.
double mc_predict_step(PredictorState& state, std::span<const double> prefix, int t);
double aligned_fast_predict_step(PredictorState& state, std::span<const double> prefix, int t);
double real_valued_predict_step(PredictorState& state, std::span<const double> prefix, int t,
                                const MagnitudeModel& model);

// Best partition value of prefix . sign . U_t, stitched from the cached
// tables in O((t+1)(T-t)) (or O(log T) aligned candidates). Exposed so tests
// can compare against a from-scratch table on the materialized sequence.
double stitched_completion_payoff(PredictorState& state, std::span<const double> prefix,
                                  int t, int sign);

struct Prediction {
  double value = 0.0;
  bool clamped = false;
};

using StepFn = std::function<Prediction(std::span<const double>, int)>;

struct StepRecord {
  int step = 0;  // 1-based
  double observed = 0.0;
  double prediction = 0.0;
  double cumulative = 0.0;
  bool clamped = false;
};

struct GameResult {
  double payoff = 0.0;
  long clamp_events = 0;
  std::vector<StepRecord> log;
};

// Plays one full game: for each step, asks for the bet on the observed
// prefix, then reveals the next value. The callback never sees values it has
// not paid for. Bets outside [-1, 1] are clamped here as a last resort.
GameResult run_game(const StepFn& step, std::span<const double> sequence);

// Convenience wrappers that enforce horizon == |sequence| and reset state.
GameResult run_predictor_game(PredictorState& state, std::span<const double> sequence);
GameResult run_exact_game(Alpha alpha, std::span<const double> sequence);

}  // namespace ivr
