#include "ivr/experts.hpp"

#include <cassert>
#include <cmath>
#include <string>

namespace ivr {

namespace {

void require_unit_payoff(double v, const char* arm, std::size_t i) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw validation_error(std::string(arm) + " payoff at step " + std::to_string(i + 1) +
                           " is outside [0, 1]: " + std::to_string(v));
  }
}

}  // namespace

ExpertsInstance make_experts_instance(std::vector<double> expert1, std::vector<double> expert2) {
  if (expert1.size() != expert2.size()) {
    throw validation_error("expert payoff columns differ in length: " +
                           std::to_string(expert1.size()) + " vs " +
                           std::to_string(expert2.size()));
  }
  for (std::size_t i = 0; i < expert1.size(); ++i) {
    require_unit_payoff(expert1[i], "expert 1", i);
    require_unit_payoff(expert2[i], "expert 2", i);
  }
  return ExpertsInstance{std::move(expert1), std::move(expert2)};
}

Sequence experts_to_bits(const ExpertsInstance& instance, bool scaled) {
  std::vector<double> values(instance.expert1.size());
  const double scale = scaled ? 1.0 : 0.5;
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = scale * (instance.expert1[i] - instance.expert2[i]);
  }
  return Sequence(std::move(values));
}

std::pair<double, double> bet_to_arm_probabilities(double bet) {
  if (!(bet >= -1.0 && bet <= 1.0)) {
    throw validation_error("bet outside [-1, 1]: " + std::to_string(bet));
  }
  return {(1.0 + bet) / 2.0, (1.0 - bet) / 2.0};
}

ArmPolicy bets_to_arm_policy(std::span<const double> bets) {
  ArmPolicy policy;
  policy.arm1.reserve(bets.size());
  policy.arm2.reserve(bets.size());
  for (double b : bets) {
    const auto [p1, p2] = bet_to_arm_probabilities(b);
    policy.arm1.push_back(p1);
    policy.arm2.push_back(p2);
  }
  return policy;
}

double experts_payoff(const ExpertsInstance& instance, const ArmPolicy& policy) {
  if (policy.length() != instance.length()) {
    throw validation_error("policy length " + std::to_string(policy.length()) +
                           " does not match instance length " + std::to_string(instance.length()));
  }
  double total = 0.0;
  double half_mass = 0.0;   // (X1 + X2)/2 accumulated alongside
  double bet_payoff = 0.0;  // sum of (p1 - p2) * (e1 - e2)/2
  for (int i = 0; i < instance.length(); ++i) {
    const double p1 = policy.arm1[i];
    const double p2 = policy.arm2[i];
    if (!(p1 >= 0.0 && p2 >= 0.0) || std::fabs(p1 + p2 - 1.0) > 1e-9) {
      throw validation_error("policy row " + std::to_string(i + 1) +
                             " is not a probability pair");
    }
    total += p1 * instance.expert1[i] + p2 * instance.expert2[i];
    half_mass += (instance.expert1[i] + instance.expert2[i]) / 2.0;
    bet_payoff += (p1 - p2) * (instance.expert1[i] - instance.expert2[i]) / 2.0;
  }
  // Invariant: arm payoff decomposes exactly into half the total mass plus the
  // betting payoff on the half-difference sequence.
  assert(std::fabs(total - (half_mass + bet_payoff)) <= 1e-12);
  return total;
}

Sequence one_sided_difference(const ExpertsInstance& instance) {
  std::vector<double> values(instance.expert1.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = instance.expert2[i] - instance.expert1[i];
  }
  return Sequence(std::move(values));
}

std::pair<double, double> one_sided_probabilities(double bet) {
  if (!(bet >= 0.0 && bet <= 1.0)) {
    throw validation_error("one-sided bet outside [0, 1]: " + std::to_string(bet));
  }
  return {1.0 - bet, bet};
}

double one_sided_experts_payoff(const ExpertsInstance& instance, std::span<const double> bets) {
  if (static_cast<int>(bets.size()) != instance.length()) {
    throw validation_error("bet count does not match instance length");
  }
  double total = 0.0;
  for (int i = 0; i < instance.length(); ++i) {
    const auto [p1, p2] = one_sided_probabilities(bets[i]);
    total += p1 * instance.expert1[i] + p2 * instance.expert2[i];
  }
  return total;
}

}  // namespace ivr
