#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <vector>

#include "ivr/experts.hpp"
#include "ivr/predictor.hpp"
#include "ivr/sequence.hpp"

namespace ivr {

// Sequence text format: one value per line; "+1", "1", "-1", or any decimal
// in [-1, 1]. Blank lines and lines starting with '#' are skipped. Parse and
// range errors carry the 1-based line number.
Sequence read_sequence(std::istream& in);
Sequence read_sequence_file(const std::filesystem::path& path);
void write_sequence(std::ostream& out, std::span<const double> values);
void write_sequence_file(const std::filesystem::path& path, std::span<const double> values);

// Same format without the [-1, 1] range check, for real-valued series.
std::vector<double> read_real_series(std::istream& in);
std::vector<double> read_real_series_file(const std::filesystem::path& path);

// Prediction log CSV: step,observed_bit,prediction,cumulative_payoff,clamped.
void write_prediction_log(std::ostream& out, const GameResult& result);
void write_prediction_log_file(const std::filesystem::path& path, const GameResult& result);
GameResult read_prediction_log(std::istream& in);
GameResult read_prediction_log_file(const std::filesystem::path& path);

// Experts payoffs CSV: t,b1,b2 with payoffs in [0, 1].
ExpertsInstance read_experts_csv(std::istream& in);
ExpertsInstance read_experts_csv_file(const std::filesystem::path& path);
void write_experts_csv(std::ostream& out, const ExpertsInstance& instance);

// Arm policy CSV: t,p1,p2.
void write_policy_csv(std::ostream& out, const ArmPolicy& policy);
void write_policy_csv_file(const std::filesystem::path& path, const ArmPolicy& policy);
ArmPolicy read_policy_csv(std::istream& in);

}  // namespace ivr
