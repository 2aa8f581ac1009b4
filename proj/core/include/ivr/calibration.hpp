#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ivr/payoff.hpp"

namespace ivr {

enum class CalibMode { automatic, exact, monte_carlo };

struct AlphaProbe {
  double alpha = 0.0;
  double mean = 0.0;
  double stderr_ = 0.0;
  long n = 0;
};

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

// Mean best-partition value over all 2^T sign sequences. Refuses T > 16.
double exact_mean_payoff(int horizon, Alpha alpha, bool aligned = false, int threads = 0);

// Monte Carlo estimate over n random sign sequences; sequence i is drawn
// from substream i of seed, so a fixed (seed, n) reuses the same sample at
// every alpha (common random numbers). stderr is the Bessel-corrected sample
// deviation over sqrt(n). The reduction is index-ordered, so the result does
// not depend on the thread count.
MeanStderr mc_mean_payoff(int horizon, Alpha alpha, long n, std::uint64_t seed,
                          bool aligned = false, int threads = 0);

struct CalibrationParams {
  int horizon = 0;
  long n = 400;
  std::uint64_t seed = 0;
  bool aligned = false;
  double tolerance = 0.01;          // final bracket width on alpha
  CalibMode mode = CalibMode::automatic;
  double bracket_low = 0.5;
  double bracket_high = 10.0;
  int threads = 0;
};

struct CalibrationReport {
  int horizon = 0;
  bool aligned = false;
  std::string mode;  // "exact" or "montecarlo"
  long n = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  double alpha0 = 0.0;
  double ci_low = 0.0;   // exact: final bracket; mc: 3 stderr via local slope
  double ci_high = 0.0;
  std::vector<AlphaProbe> probes;  // bisection trace, in probe order
};

// Smallest alpha with mean payoff <= 0, by bisection on a sign change of the
// mean. The mean is monotone in alpha sample-by-sample, so with common
// random numbers the bracket logic is sound. Throws validation_error when
// the bracket does not straddle zero (message carries both endpoint means).
CalibrationReport estimate_alpha0(const CalibrationParams& params);

// Mean payoff at each alpha in a fixed grid; shares the calibration sample.
std::vector<AlphaProbe> alpha_grid_scan(const CalibrationParams& params,
                                        const std::vector<double>& alphas);

std::string calibration_report_json(const CalibrationReport& report);

}  // namespace ivr
