#include "ivr/baselines.hpp"

#include <cmath>
#include <string>

#include "ivr/payoff.hpp"

namespace ivr {

double wm_eta_for_horizon(int horizon) {
  if (horizon < 1) throw validation_error("horizon must be >= 1");
  return std::sqrt(2.0 * std::log(2.0) / static_cast<double>(horizon));
}

ExpertEnsemble make_two_expert_ensemble(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw validation_error("learning rate must be finite and > 0");
  }
  ExpertEnsemble e;
  e.learning_rate = eta;
  return e;
}

double weighted_majority_bet(const ExpertEnsemble& ensemble) {
  return ensemble.weights[0] * ensemble.expert_bets[0] +
         ensemble.weights[1] * ensemble.expert_bets[1];
}

void weighted_majority_update(ExpertEnsemble& ensemble, double observed) {
  if (!(observed >= -1.0 && observed <= 1.0)) {
    throw validation_error("observed value outside [-1, 1]");
  }
  const double eta = ensemble.learning_rate;
  double w0 = ensemble.weights[0] * std::exp(eta * ensemble.expert_bets[0] * observed);
  double w1 = ensemble.weights[1] * std::exp(eta * ensemble.expert_bets[1] * observed);
  const double z = w0 + w1;  // renormalize so weights never drift to 0 or inf
  ensemble.weights[0] = w0 / z;
  ensemble.weights[1] = w1 / z;
}

GameResult run_weighted_majority_game(std::span<const double> sequence) {
  ExpertEnsemble ensemble =
      make_two_expert_ensemble(wm_eta_for_horizon(static_cast<int>(sequence.size())));
  StepFn fn = [&ensemble](std::span<const double> prefix, int) {
    if (!prefix.empty()) weighted_majority_update(ensemble, prefix.back());
    return Prediction{weighted_majority_bet(ensemble), false};
  };
  return run_game(fn, sequence);
}

double best_expert_hindsight(std::span<const double> sequence) {
  double h = 0.0;
  for (double v : sequence) h += v;
  return std::fabs(h);
}

double best_partition_expert_payoff(std::span<const double> sequence,
                                    const Partition& partition) {
  const int n = static_cast<int>(sequence.size());
  if (!partition.covers(n)) {
    throw validation_error("partition does not tile [1, " + std::to_string(n) + "]");
  }
  const PrefixSums sums = build_prefix_sums(sequence);
  double total = 0.0;
  for (const Interval& iv : partition.intervals) total += std::fabs(sums.height(iv));
  return total;
}

}  // namespace ivr
