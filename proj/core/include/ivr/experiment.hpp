#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ivr/calibration.hpp"
#include "ivr/generator.hpp"
#include "ivr/predictor.hpp"
#include "ivr/sequence.hpp"

namespace ivr {

inline constexpr int kReportSchemaVersion = 1;

enum class AlgoKind { interval_exact, interval_mc, interval_aligned, wm, const_plus, const_minus };

AlgoKind algo_kind_from_name(const std::string& name);
std::string algo_kind_name(AlgoKind kind);

enum class InputKind { file, generator, prices };

// Parsed and validated backtest configuration. parse_experiment_config
// collects every violation before throwing, so one round trip fixes all.
struct ExperimentConfig {
  InputKind input_kind = InputKind::generator;
  std::string input_path;       // file / prices
  GeneratorSpec generator;      // generator
  int horizon = 0;              // generator only; files fix their own length
  int games = 1;
  double alpha = 0.0;           // 0 means "calibrate first"
  long calibration_n = 400;
  std::uint64_t seed = 0;
  std::vector<AlgoKind> algos;
  std::vector<std::string> replay_logs;  // prediction logs to rescore
  std::string log_dir;                   // write per-game logs when set
  int threads = 0;
  std::string raw_json;  // original config text, echoed into the report
};

ExperimentConfig parse_experiment_config(const std::string& json_text);

struct AlgoSummary {
  std::string name;
  double mean_payoff = 0.0;
  double stderr_ = 0.0;
  std::vector<double> payoffs;  // one per game
  long clamp_events = 0;
  double wall_seconds = 0.0;
};

struct ReplaySummary {
  std::string path;
  double recorded_payoff = 0.0;
  double recomputed_payoff = 0.0;
  bool consistent = false;
};

struct ExperimentReport {
  int schema_version = kReportSchemaVersion;
  std::uint64_t seed = 0;
  double alpha = 0.0;
  int horizon = 0;
  int games = 0;
  std::string input_description;
  long clip_events = 0;
  std::vector<AlgoSummary> algos;
  double mean_interval_benchmark = 0.0;  // mean best-partition value of the inputs
  double mean_best_expert = 0.0;         // mean |height|
  std::vector<ReplaySummary> replays;
  std::string config_echo;  // the config this report reproduces from
};

ExperimentReport run_experiment(const ExperimentConfig& config);

std::string experiment_report_json(const ExperimentReport& report);

// Recomputes a log's payoff from its own columns; optionally cross-checks
// the observed column against an input sequence and adds comparators.
struct ScoreLogResult {
  int steps = 0;
  double recorded_payoff = 0.0;
  double recomputed_payoff = 0.0;
  bool consistent = false;  // per-row cumulative matches within 1e-9
  long clamp_events = 0;
  std::optional<double> interval_benchmark;  // needs input + alpha
  std::optional<double> regret_to_best_expert;
  std::optional<double> regret_to_average;
};

ScoreLogResult score_log(const GameResult& log, const std::optional<Sequence>& input,
                         const std::optional<Alpha>& alpha);

std::string score_log_json(const ScoreLogResult& result);

}  // namespace ivr
