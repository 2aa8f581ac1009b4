#pragma once

#include <span>
#include <utility>
#include <vector>

#include "ivr/sequence.hpp"

namespace ivr {

// Two-experts instance: per-step payoffs in [0, 1] for each arm.
struct ExpertsInstance {
  std::vector<double> expert1;
  std::vector<double> expert2;

  int length() const { return static_cast<int>(expert1.size()); }
};

// Validates equal lengths and the [0, 1] payoff range.
ExpertsInstance make_experts_instance(std::vector<double> expert1, std::vector<double> expert2);

// Per-step probabilities of playing arm 1 / arm 2 (rows sum to 1).
struct ArmPolicy {
  std::vector<double> arm1;
  std::vector<double> arm2;

  int length() const { return static_cast<int>(arm1.size()); }
};

// Difference sequence b_t = (b1_t - b2_t) / 2, in [-1/2, 1/2]; with
// scaled = true it is doubled into [-1, 1] (bets scale back accordingly).
Sequence experts_to_bits(const ExpertsInstance& instance, bool scaled);

// Bet in [-1, 1] -> probabilities ((1+bet)/2, (1-bet)/2) of the two arms.
// The same map serves both scalings: only the payoff identity changes.
std::pair<double, double> bet_to_arm_probabilities(double bet);

// Expected payoff sum(p1*b1 + p2*b2). For any policy built from bets b~ via
// bet_to_arm_probabilities this equals (X1 + X2)/2 + sum(b~ * b) exactly,
// where b is the unscaled difference sequence and X_i the arm totals.
double experts_payoff(const ExpertsInstance& instance, const ArmPolicy& policy);

ArmPolicy bets_to_arm_policy(std::span<const double> bets);

// One-sided variant: d_t = b2_t - b1_t in [-1, 1]; a bet b~ in [0, 1] plays
// arm 2 with probability b~. Expected payoff is X1 + sum(b~ * d).
Sequence one_sided_difference(const ExpertsInstance& instance);
std::pair<double, double> one_sided_probabilities(double bet);
double one_sided_experts_payoff(const ExpertsInstance& instance, std::span<const double> bets);

}  // namespace ivr
