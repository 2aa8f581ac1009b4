#include "ivr/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ivr {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kExactHorizonLimit = 16;

// Underlying deviation that makes the folded normal mean exactly one.
constexpr double kHalfNormalSigma = 1.2533141373155003;  // sqrt(pi/2)

std::vector<double> sqrt_table(int n) {
  std::vector<double> sq(n + 1);
  for (int k = 0; k <= n; ++k) sq[k] = std::sqrt(static_cast<double>(k));
  return sq;
}

void require_step(const PredictorState& st, std::span<const double> prefix, int t) {
  if (t < 0 || t >= st.horizon) {
    throw validation_error("step " + std::to_string(t) + " outside [0, " +
                           std::to_string(st.horizon - 1) + "]");
  }
  if (static_cast<int>(prefix.size()) != t) {
    throw validation_error("prefix holds " + std::to_string(prefix.size()) +
                           " values but the step index is " + std::to_string(t));
  }
}

// Appends one observed value and extends the best-prefix-value stack.
void observe_value(PredictorState& st, double v) {
  st.observed.push_back(v);
  st.observed_prefix.push_back(st.observed_prefix.back() + v);
  const int p = static_cast<int>(st.observed.size());
  const double a = st.alpha.value;
  double best = kNegInf;
  if (st.mode == PredictMode::aligned_fast) {
    // Last piece is the aligned interval [p-len+1, p]; len must divide p.
    for (int len = 1; len <= p; len <<= 1) {
      if (p % len != 0) break;
      best = std::max(best, st.prefix_best[p - len] +
                                std::fabs(st.observed_prefix[p] - st.observed_prefix[p - len]) -
                                a * st.sqrt_table[len]);
    }
  } else {
    // Last interval is [r, p]; one new table row per observed value.
    for (int r = 1; r <= p; ++r) {
      best = std::max(best, st.prefix_best[r - 1] +
                                std::fabs(st.observed_prefix[p] - st.observed_prefix[r - 1]) -
                                a * st.sqrt_table[p - r + 1]);
    }
  }
  st.prefix_best.push_back(best);
}

// Re-feeds the observed prefix when the caller rewound or diverged.
void sync_observed(PredictorState& st, std::span<const double> prefix) {
  std::size_t common = 0;
  while (common < st.observed.size() && common < prefix.size() &&
         st.observed[common] == prefix[common]) {
    ++common;
  }
  if (common < st.observed.size()) {
    st.reset_observed();
    common = 0;
  }
  for (std::size_t k = common; k < prefix.size(); ++k) observe_value(st, prefix[k]);
}

// Best full-sequence values of prefix . (+1) . U_t and prefix . (-1) . U_t.
// Every partition has exactly one interval covering position t+1; maximize
// over its endpoints, reusing best prefix values on the left and best
// completion-suffix values on the right.
std::pair<double, double> stitch_pair(PredictorState& st, int t) {
  const auto& u_heights = st.completion_heights[t];
  const auto& u_suffix = st.suffix_payoffs[t];
  const int L = st.horizon - t - 1;
  const double a = st.alpha.value;
  const double ct = st.observed_prefix[t];
  double best_plus = kNegInf, best_minus = kNegInf;
  for (int i = 0; i <= t; ++i) {
    const double hs = ct - st.observed_prefix[i];
    const double pb = st.prefix_best[i];
    const double* sq = st.sqrt_table.data() + (t - i + 1);
    for (int m = 0; m <= L; ++m) {
      const double core = hs + u_heights[m];
      const double base = pb + u_suffix[m] - a * sq[m];
      best_plus = std::max(best_plus, base + std::fabs(core + 1.0));
      best_minus = std::max(best_minus, base + std::fabs(core - 1.0));
    }
  }
  st.last_candidate_count = (t + 1) * (L + 1);
  return {best_plus, best_minus};
}

// Aligned analog: the crossing interval must be the aligned block of length
// 2^l containing position t+1, one candidate per level.
std::pair<double, double> aligned_stitch_pair(PredictorState& st, int t) {
  const int T = st.horizon;
  const int p = t + 1;
  const auto& u_heights = st.completion_heights[t];
  const auto& u_suffix = st.suffix_payoffs[t];
  const double a = st.alpha.value;
  double best_plus = kNegInf, best_minus = kNegInf;
  int count = 0;
  for (int len = 1; len <= T; len <<= 1) {
    const int cs = (p - 1) / len * len + 1;
    const int ce = cs + len - 1;
    const double hs = st.observed_prefix[t] - st.observed_prefix[cs - 1];
    const double core = hs + u_heights[ce - t - 1];
    const double base =
        st.prefix_best[cs - 1] + u_suffix[ce - t - 1] - a * st.sqrt_table[len];
    best_plus = std::max(best_plus, base + std::fabs(core + 1.0));
    best_minus = std::max(best_minus, base + std::fabs(core - 1.0));
    ++count;
  }
  st.last_candidate_count = count;
  return {best_plus, best_minus};
}

// Best value over partitions of [q..T] into aligned intervals, for every
// start q = t+2 .. T+1 (local index q - (t+2); the last entry is the empty
// suffix). First piece is the aligned interval starting at q.
std::vector<double> aligned_suffix_table(const std::vector<double>& u_heights, int t, int T,
                                         double alpha, const std::vector<double>& sq) {
  const int L = T - t - 1;
  std::vector<double> suf(L + 1);
  suf[L] = 0.0;
  for (int ql = L - 1; ql >= 0; --ql) {
    const int q = t + 2 + ql;
    double best = kNegInf;
    for (int len = 1; len <= T; len <<= 1) {
      if ((q - 1) % len != 0) break;
      if (q + len - 1 > T) break;
      best = std::max(best, std::fabs(u_heights[ql + len] - u_heights[ql]) - alpha * sq[len] +
                                suf[ql + len]);
    }
    suf[ql] = best;
  }
  return suf;
}

double clamp_bet(PredictorState& st, double v) {
  st.last_clamped = false;
  if (v > 1.0) {
    v = 1.0;
    st.last_clamped = true;
    ++st.clamp_count;
  } else if (v < -1.0) {
    v = -1.0;
    st.last_clamped = true;
    ++st.clamp_count;
  }
  return v;
}

std::vector<std::vector<double>> draw_completions(int horizon, std::uint64_t seed,
                                                  const MagnitudeModel& model) {
  Rng root(seed);
  std::vector<std::vector<double>> out(horizon);
  for (int t = 0; t < horizon; ++t) {
    const int L = horizon - 1 - t;
    Rng signs = root.split(2 * static_cast<std::uint64_t>(t));
    Rng mags = root.split(2 * static_cast<std::uint64_t>(t) + 1);
    out[t].resize(L);
    for (int k = 0; k < L; ++k) {
      const double sign = signs.next_sign();
      const double mag =
          model.kind() == MagnitudeModel::Kind::point_mass_one ? 1.0 : model.sample(mags);
      out[t][k] = sign * mag;
    }
  }
  return out;
}

// Sampling self-check: 1e5 draws must average to one within three standard
// errors. Catches a miscalibrated or corrupted magnitude model up front.
void validate_magnitude_model(const MagnitudeModel& model) {
  constexpr long kSamples = 100000;
  Rng rng(0x6D61676E69747564ull);
  double sum = 0.0, sumsq = 0.0;
  for (long i = 0; i < kSamples; ++i) {
    const double x = model.sample(rng);
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw validation_error("magnitude model produced an invalid sample");
    }
    sum += x;
    sumsq += x * x;
  }
  const double mean = sum / kSamples;
  const double var = std::max(0.0, (sumsq - sum * mean) / (kSamples - 1));
  const double stderr_ = std::sqrt(var / kSamples);
  if (std::fabs(mean - 1.0) > std::max(3.0 * stderr_, 1e-9)) {
    throw validation_error("magnitude model mean " + std::to_string(mean) +
                           " is not one within sampling error");
  }
}

}  // namespace

MagnitudeModel MagnitudeModel::point_mass_one() { return MagnitudeModel(Kind::point_mass_one); }

MagnitudeModel MagnitudeModel::half_normal_mean_one() {
  return MagnitudeModel(Kind::half_normal_mean_one);
}

MagnitudeModel MagnitudeModel::empirical(std::vector<double> values) {
  if (values.empty()) throw validation_error("empirical magnitude model needs values");
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0) || !std::isfinite(values[i])) {
      throw validation_error("empirical magnitude at position " + std::to_string(i + 1) +
                             " must be finite and >= 0");
    }
    sum += values[i];
  }
  const double mean = sum / static_cast<double>(values.size());
  if (std::fabs(mean - 1.0) > 0.05) {
    throw validation_error("empirical magnitudes must average to one within 5%, got " +
                           std::to_string(mean));
  }
  MagnitudeModel model(Kind::empirical);
  model.values_ = std::move(values);
  return model;
}

double MagnitudeModel::sample(Rng& rng) const {
  switch (kind_) {
    case Kind::point_mass_one:
      return 1.0;
    case Kind::half_normal_mean_one: {
      const double u1 = 1.0 - rng.next_unit();  // (0, 1]
      const double u2 = rng.next_unit();
      const double z =
          std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
      return std::fabs(z) * kHalfNormalSigma;
    }
    case Kind::empirical: {
      std::size_t idx = static_cast<std::size_t>(rng.next_unit() * values_.size());
      if (idx >= values_.size()) idx = values_.size() - 1;
      return values_[idx];
    }
  }
  return 1.0;
}

std::string MagnitudeModel::name() const {
  switch (kind_) {
    case Kind::point_mass_one:
      return "point-mass-one";
    case Kind::half_normal_mean_one:
      return "half-normal-mean-one";
    case Kind::empirical:
      return "empirical-from-file";
  }
  return "?";
}

void PredictorState::reset_observed() {
  observed.clear();
  observed_prefix.assign(1, 0.0);
  prefix_best.assign(1, 0.0);
  last_clamped = false;
  last_candidate_count = 0;
}

PredictorState make_predictor_state(int horizon, Alpha alpha, PredictMode mode,
                                    std::vector<std::vector<double>> completions,
                                    std::uint64_t seed, MagnitudeModel model) {
  if (horizon < 1) throw validation_error("horizon must be >= 1");
  if (mode == PredictMode::exact) {
    throw validation_error("exact prediction carries no precomputed state");
  }
  if (mode == PredictMode::aligned_fast && !is_power_of_two(horizon)) {
    throw validation_error("aligned prediction needs a power-of-two horizon, got " +
                           std::to_string(horizon));
  }
  if (static_cast<int>(completions.size()) != horizon) {
    throw validation_error("need exactly one completion per step");
  }
  for (int t = 0; t < horizon; ++t) {
    if (static_cast<int>(completions[t].size()) != horizon - 1 - t) {
      throw validation_error("completion for step " + std::to_string(t) + " must have " +
                             std::to_string(horizon - 1 - t) + " values");
    }
  }

  PredictorState st;
  st.horizon = horizon;
  st.alpha = alpha;
  st.mode = mode;
  st.seed = seed;
  st.model = model;
  st.sqrt_table = sqrt_table(horizon);
  st.completions = std::move(completions);
  st.completion_heights.resize(horizon);
  st.suffix_payoffs.resize(horizon);
  for (int t = 0; t < horizon; ++t) {
    const auto& u = st.completions[t];
    auto& heights = st.completion_heights[t];
    heights.resize(u.size() + 1);
    heights[0] = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) heights[k + 1] = heights[k] + u[k];
    if (mode == PredictMode::aligned_fast) {
      st.suffix_payoffs[t] =
          aligned_suffix_table(heights, t, horizon, alpha.value, st.sqrt_table);
    } else {
      st.suffix_payoffs[t] = payoff_suffix_values(u, alpha);
    }
  }
  st.reset_observed();
  return st;
}

PredictorState mc_precompute(int horizon, Alpha alpha, std::uint64_t seed) {
  return make_predictor_state(horizon, alpha, PredictMode::monte_carlo,
                              draw_completions(horizon, seed, MagnitudeModel::point_mass_one()),
                              seed, MagnitudeModel::point_mass_one());
}

PredictorState aligned_precompute(int horizon, Alpha alpha, std::uint64_t seed) {
  return make_predictor_state(horizon, alpha, PredictMode::aligned_fast,
                              draw_completions(horizon, seed, MagnitudeModel::point_mass_one()),
                              seed, MagnitudeModel::point_mass_one());
}

PredictorState real_precompute(int horizon, Alpha alpha, std::uint64_t seed,
                               const MagnitudeModel& model) {
  validate_magnitude_model(model);
  return make_predictor_state(horizon, alpha, PredictMode::monte_carlo,
                              draw_completions(horizon, seed, model), seed, model);
}

double exact_predict_step(std::span<const double> prefix, Alpha alpha, int horizon) {
  if (horizon < 1 || horizon > kExactHorizonLimit) {
    throw validation_error("exact prediction supports horizons 1.." +
                           std::to_string(kExactHorizonLimit) + ", got " +
                           std::to_string(horizon));
  }
  const int t = static_cast<int>(prefix.size());
  if (t >= horizon) throw validation_error("prefix is already a full sequence");

  const int L = horizon - t - 1;
  std::vector<double> buf(horizon);
  std::copy(prefix.begin(), prefix.end(), buf.begin());
  double sum_plus = 0.0, sum_minus = 0.0;
  const std::uint64_t count = 1ull << L;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    for (int k = 0; k < L; ++k) {
      buf[t + 1 + k] = (mask >> k) & 1 ? 1.0 : -1.0;
    }
    buf[t] = 1.0;
    sum_plus += payoff_value(buf, alpha);
    buf[t] = -1.0;
    sum_minus += payoff_value(buf, alpha);
  }
  const double bet = (sum_plus - sum_minus) / (2.0 * static_cast<double>(count));
  if (std::fabs(bet) > 1.0 + 1e-9) {
    throw std::logic_error("exact bet escaped [-1, 1]: " + std::to_string(bet));
  }
  return std::clamp(bet, -1.0, 1.0);
}

double mc_predict_step(PredictorState& state, std::span<const double> prefix, int t) {
  if (state.mode != PredictMode::monte_carlo) {
    throw validation_error("state was not built for monte-carlo prediction");
  }
  require_step(state, prefix, t);
  sync_observed(state, prefix);
  const auto [plus, minus] = stitch_pair(state, t);
  return clamp_bet(state, (plus - minus) / 2.0);
}

double aligned_fast_predict_step(PredictorState& state, std::span<const double> prefix, int t) {
  if (state.mode != PredictMode::aligned_fast) {
    throw validation_error("state was not built for aligned prediction");
  }
  require_step(state, prefix, t);
  sync_observed(state, prefix);
  const auto [plus, minus] = aligned_stitch_pair(state, t);
  return clamp_bet(state, (plus - minus) / 2.0);
}

double real_valued_predict_step(PredictorState& state, std::span<const double> prefix, int t,
                                const MagnitudeModel& model) {
  if (state.mode != PredictMode::monte_carlo) {
    throw validation_error("state was not built for monte-carlo prediction");
  }
  if (state.model.kind() != model.kind()) {
    throw validation_error("state was precomputed for magnitude model " + state.model.name() +
                           ", not " + model.name());
  }
  require_step(state, prefix, t);
  sync_observed(state, prefix);
  const auto [plus, minus] = stitch_pair(state, t);
  return clamp_bet(state, (plus - minus) / 2.0);
}

double stitched_completion_payoff(PredictorState& state, std::span<const double> prefix, int t,
                                  int sign) {
  if (sign != 1 && sign != -1) throw validation_error("sign must be +1 or -1");
  require_step(state, prefix, t);
  sync_observed(state, prefix);
  const auto [plus, minus] = state.mode == PredictMode::aligned_fast
                                 ? aligned_stitch_pair(state, t)
                                 : stitch_pair(state, t);
  return sign == 1 ? plus : minus;
}

GameResult run_game(const StepFn& step, std::span<const double> sequence) {
  GameResult result;
  result.log.reserve(sequence.size());
  std::vector<double> observed;
  observed.reserve(sequence.size());
  for (int t = 0; t < static_cast<int>(sequence.size()); ++t) {
    Prediction p = step({observed.data(), observed.size()}, t);
    bool clamped = p.clamped;
    double bet = p.value;
    if (bet > 1.0) {
      bet = 1.0;
      clamped = true;
    } else if (bet < -1.0) {
      bet = -1.0;
      clamped = true;
    }
    const double value = sequence[t];
    result.payoff += value * bet;
    observed.push_back(value);
    result.log.push_back({t + 1, value, bet, result.payoff, clamped});
    if (clamped) ++result.clamp_events;
  }
  return result;
}

GameResult run_predictor_game(PredictorState& state, std::span<const double> sequence) {
  if (static_cast<int>(sequence.size()) != state.horizon) {
    throw validation_error("sequence length " + std::to_string(sequence.size()) +
                           " does not match predictor horizon " + std::to_string(state.horizon));
  }
  state.reset_observed();
  StepFn fn;
  if (state.mode == PredictMode::aligned_fast) {
    fn = [&state](std::span<const double> prefix, int t) {
      const double v = aligned_fast_predict_step(state, prefix, t);
      return Prediction{v, state.last_clamped};
    };
  } else {
    fn = [&state](std::span<const double> prefix, int t) {
      const double v = mc_predict_step(state, prefix, t);
      return Prediction{v, state.last_clamped};
    };
  }
  return run_game(fn, sequence);
}

GameResult run_exact_game(Alpha alpha, std::span<const double> sequence) {
  const int horizon = static_cast<int>(sequence.size());
  StepFn fn = [alpha, horizon](std::span<const double> prefix, int) {
    return Prediction{exact_predict_step(prefix, alpha, horizon), false};
  };
  return run_game(fn, sequence);
}

}  // namespace ivr
