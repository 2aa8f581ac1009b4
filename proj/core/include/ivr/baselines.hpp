#pragma once

#include <array>
#include <span>

#include "ivr/predictor.hpp"
#include "ivr/sequence.hpp"

namespace ivr {

// Exponential-weights mixture of the two constant experts, one always
// betting +1 and one always betting -1.
struct ExpertEnsemble {
  std::array<double, 2> expert_bets{+1.0, -1.0};
  std::array<double, 2> weights{0.5, 0.5};
  double learning_rate = 0.0;
};

// Horizon-tuned rate sqrt(2 ln 2 / T); regret to the best constant expert
// is at most eta*T/2 + ln(2)/eta = sqrt(2 T ln 2).
double wm_eta_for_horizon(int horizon);

ExpertEnsemble make_two_expert_ensemble(double eta);

// Weighted-average bet. With the constant experts this is
// tanh(eta * running_height), so it always lies in (-1, 1).
double weighted_majority_bet(const ExpertEnsemble& ensemble);

// Multiplies weights by exp(eta * bet * observed) and renormalizes so the
// weights stay a probability vector over long games.
void weighted_majority_update(ExpertEnsemble& ensemble, double observed);

GameResult run_weighted_majority_game(std::span<const double> sequence);

// Hindsight comparators.
double best_expert_hindsight(std::span<const double> sequence);  // |height|
// sum over intervals of |height|; validates that the partition tiles [1, T].
double best_partition_expert_payoff(std::span<const double> sequence,
                                    const Partition& partition);

}  // namespace ivr
