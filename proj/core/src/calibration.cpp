#include "ivr/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <json.hpp>

#include "ivr/parallel.hpp"
#include "ivr/rng.hpp"

namespace ivr {

namespace {

constexpr int kExactHorizonLimit = 16;

MeanStderr mean_and_stderr(const std::vector<double>& values) {
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

// Sign sequence i of the calibration sample: signs from substream i of seed.
void fill_signs(Rng stream, std::span<double> out) {
  for (double& v : out) v = stream.next_sign();
}

double eval_one(std::span<const double> seq, Alpha alpha, bool aligned) {
  return aligned ? aligned_payoff_value(seq, alpha) : payoff_value(seq, alpha);
}

}  // namespace

double exact_mean_payoff(int horizon, Alpha alpha, bool aligned, int threads) {
  if (horizon < 1 || horizon > kExactHorizonLimit) {
    throw validation_error("exact mean supports horizons 1.." +
                           std::to_string(kExactHorizonLimit) + ", got " +
                           std::to_string(horizon));
  }
  if (aligned && !is_power_of_two(horizon)) {
    throw validation_error("aligned mean needs a power-of-two horizon");
  }
  const long total = 1L << horizon;
  std::vector<double> values(total);
  parallel_for(
      total,
      [&](long mask) {
        double buf[kExactHorizonLimit];
        for (int k = 0; k < horizon; ++k) buf[k] = (mask >> k) & 1 ? 1.0 : -1.0;
        values[mask] = eval_one({buf, static_cast<std::size_t>(horizon)}, alpha, aligned);
      },
      threads);
  // Index-ordered reduction: result is independent of the thread count.
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(total);
}

MeanStderr mc_mean_payoff(int horizon, Alpha alpha, long n, std::uint64_t seed, bool aligned,
                          int threads) {
  if (horizon < 1) throw validation_error("horizon must be >= 1");
  if (n < 2) throw validation_error("need at least 2 samples");
  if (aligned && !is_power_of_two(horizon)) {
    throw validation_error("aligned mean needs a power-of-two horizon");
  }
  Rng root(seed);
  std::vector<double> values(n);
  parallel_for(
      n,
      [&](long i) {
        std::vector<double> seq(horizon);
        fill_signs(root.split(static_cast<std::uint64_t>(i)), seq);
        values[i] = eval_one(seq, alpha, aligned);
      },
      threads);
  return mean_and_stderr(values);
}

namespace {

// Shared evaluation core for calibration: mean payoff at one alpha, either
// exact or over a fixed presampled sign matrix (common random numbers).
struct CalibSampler {
  int horizon = 0;
  bool aligned = false;
  bool exact = false;
  long n = 0;
  int threads = 0;
  std::vector<double> sample;  // n x horizon, row-major; empty when exact

  AlphaProbe probe(double alpha_value) const {
    const Alpha alpha(alpha_value);
    AlphaProbe p;
    p.alpha = alpha_value;
    if (exact) {
      p.mean = exact_mean_payoff(horizon, alpha, aligned, threads);
      p.stderr_ = 0.0;
      p.n = 1L << horizon;
      return p;
    }
    std::vector<double> values(n);
    parallel_for(
        n,
        [&](long i) {
          values[i] = eval_one({sample.data() + i * horizon,
                                static_cast<std::size_t>(horizon)},
                               alpha, aligned);
        },
        threads);
    const MeanStderr ms = mean_and_stderr(values);
    p.mean = ms.mean;
    p.stderr_ = ms.stderr_;
    p.n = n;
    return p;
  }
};

CalibSampler make_sampler(const CalibrationParams& params) {
  if (params.horizon < 1) throw validation_error("horizon must be >= 1");
  if (params.aligned && !is_power_of_two(params.horizon)) {
    throw validation_error("aligned calibration needs a power-of-two horizon");
  }
  CalibSampler s;
  s.horizon = params.horizon;
  s.aligned = params.aligned;
  s.threads = params.threads;
  switch (params.mode) {
    case CalibMode::exact:
      s.exact = true;
      break;
    case CalibMode::monte_carlo:
      s.exact = false;
      break;
    case CalibMode::automatic:
      s.exact = params.horizon <= kExactHorizonLimit;
      break;
  }
  if (s.exact && params.horizon > kExactHorizonLimit) {
    throw validation_error("exact calibration supports horizons up to " +
                           std::to_string(kExactHorizonLimit));
  }
  if (!s.exact) {
    if (params.n < 2) throw validation_error("need at least 2 samples");
    s.n = params.n;
    Rng root(params.seed);
    s.sample.resize(static_cast<std::size_t>(params.n) * params.horizon);
    for (long i = 0; i < params.n; ++i) {
      fill_signs(root.split(static_cast<std::uint64_t>(i)),
                 {s.sample.data() + i * params.horizon, static_cast<std::size_t>(params.horizon)});
    }
  }
  return s;
}

}  // namespace

CalibrationReport estimate_alpha0(const CalibrationParams& params) {
  if (!(params.bracket_low > 0.0) || !(params.bracket_high > params.bracket_low)) {
    throw validation_error("bracket must satisfy 0 < low < high");
  }
  if (!(params.tolerance > 0.0)) throw validation_error("tolerance must be > 0");

  const CalibSampler sampler = make_sampler(params);

  CalibrationReport report;
  report.horizon = params.horizon;
  report.aligned = params.aligned;
  report.mode = sampler.exact ? "exact" : "montecarlo";
  report.n = sampler.exact ? (1L << params.horizon) : params.n;
  report.seed = params.seed;
  report.tolerance = params.tolerance;

  auto probe = [&](double a) {
    AlphaProbe p = sampler.probe(a);
    report.probes.push_back(p);
    return p;
  };

  AlphaProbe lo = probe(params.bracket_low);
  AlphaProbe hi = probe(params.bracket_high);
  // Feasibility threshold: smallest alpha with mean <= 0. The mean falls in
  // alpha sample-by-sample, so one sign change is all there is.
  if (!(lo.mean > 0.0)) {
    throw validation_error("bracket does not straddle zero: mean at alpha=" +
                           std::to_string(lo.alpha) + " is already " + std::to_string(lo.mean) +
                           " <= 0; lower bracket_low");
  }
  if (!(hi.mean <= 0.0)) {
    throw validation_error("bracket does not straddle zero: mean at alpha=" +
                           std::to_string(hi.alpha) + " is still " + std::to_string(hi.mean) +
                           " > 0; raise bracket_high");
  }

  while (hi.alpha - lo.alpha > params.tolerance) {
    const double mid = (lo.alpha + hi.alpha) / 2.0;
    AlphaProbe m = probe(mid);
    if (m.mean > 0.0) {
      lo = m;
    } else {
      hi = m;
    }
  }

  report.alpha0 = (lo.alpha + hi.alpha) / 2.0;
  if (sampler.exact) {
    report.ci_low = lo.alpha;
    report.ci_high = hi.alpha;
  } else {
    // Delta method: the root moves by (mean noise) / |slope of the mean|.
    const double slope = (hi.mean - lo.mean) / (hi.alpha - lo.alpha);
    const double se = std::max(lo.stderr_, hi.stderr_);
    const double width =
        std::fabs(slope) > 0.0 ? 3.0 * se / std::fabs(slope) : (hi.alpha - lo.alpha);
    report.ci_low = std::max(params.bracket_low, report.alpha0 - width);
    report.ci_high = std::min(params.bracket_high, report.alpha0 + width);
  }
  return report;
}

std::vector<AlphaProbe> alpha_grid_scan(const CalibrationParams& params,
                                        const std::vector<double>& alphas) {
  if (alphas.empty()) throw validation_error("alpha grid is empty");
  for (double a : alphas) {
    if (!(a >= 0.0)) throw validation_error("grid alphas must be >= 0");
  }
  const CalibSampler sampler = make_sampler(params);
  std::vector<AlphaProbe> probes;
  probes.reserve(alphas.size());
  for (double a : alphas) probes.push_back(sampler.probe(a));
  return probes;
}

std::string calibration_report_json(const CalibrationReport& report) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["horizon"] = report.horizon;
  j["aligned"] = report.aligned;
  j["mode"] = report.mode;
  j["n"] = report.n;
  j["seed"] = report.seed;
  j["tolerance"] = report.tolerance;
  j["alpha0"] = report.alpha0;
  j["ci_low"] = report.ci_low;
  j["ci_high"] = report.ci_high;
  j["probes"] = nlohmann::json::array();
  for (const AlphaProbe& p : report.probes) {
    j["probes"].push_back({{"alpha", p.alpha}, {"mean", p.mean}, {"stderr", p.stderr_}, {"n", p.n}});
  }
  return j.dump(2);
}

}  // namespace ivr
