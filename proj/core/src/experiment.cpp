#include "ivr/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "ivr/baselines.hpp"
#include "ivr/ingest.hpp"
#include "ivr/io.hpp"
#include "ivr/rng.hpp"

namespace ivr {

namespace {

using nlohmann::json;

// Substream ids under the experiment seed; disjoint by construction.
constexpr std::uint64_t kGenStream = 1000000;
constexpr std::uint64_t kAlgoStream = 2000000;
constexpr std::uint64_t kCalibStream = 3000000;

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

}  // namespace

AlgoKind algo_kind_from_name(const std::string& name) {
  if (name == "interval-exact") return AlgoKind::interval_exact;
  if (name == "interval-mc") return AlgoKind::interval_mc;
  if (name == "interval-aligned") return AlgoKind::interval_aligned;
  if (name == "wm") return AlgoKind::wm;
  if (name == "const+") return AlgoKind::const_plus;
  if (name == "const-") return AlgoKind::const_minus;
  throw validation_error("unknown algorithm: " + name);
}

std::string algo_kind_name(AlgoKind kind) {
  switch (kind) {
    case AlgoKind::interval_exact:
      return "interval-exact";
    case AlgoKind::interval_mc:
      return "interval-mc";
    case AlgoKind::interval_aligned:
      return "interval-aligned";
    case AlgoKind::wm:
      return "wm";
    case AlgoKind::const_plus:
      return "const+";
    case AlgoKind::const_minus:
      return "const-";
  }
  return "?";
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw validation_error(std::string("config is not valid JSON: ") + e.what());
  }

  ExperimentConfig cfg;
  std::vector<std::string> errors;
  auto fail = [&errors](const std::string& msg) { errors.push_back(msg); };

  if (!j.is_object()) {
    throw validation_error("config must be a JSON object");
  }

  // input block
  if (!j.contains("input") || !j["input"].is_object()) {
    fail("input: required object with kind file|generator|prices");
  } else {
    const json& in = j["input"];
    const std::string kind = in.value("kind", "");
    if (kind == "file" || kind == "prices") {
      cfg.input_kind = kind == "file" ? InputKind::file : InputKind::prices;
      if (!in.contains("path") || !in["path"].is_string() || in["path"].get<std::string>().empty()) {
        fail("input.path: required for kind " + kind);
      } else {
        cfg.input_path = in["path"].get<std::string>();
      }
    } else if (kind == "generator") {
      cfg.input_kind = InputKind::generator;
      cfg.horizon = in.value("horizon", 0);
      if (cfg.horizon < 1) fail("input.horizon: required and >= 1 for generated input");
      const json& g = in.contains("generator") && in["generator"].is_object()
                          ? in["generator"]
                          : json::object();
      const std::string gkind = g.value("kind", "uniform");
      try {
        cfg.generator.kind = generator_kind_from_name(gkind);
      } catch (const validation_error& e) {
        fail(std::string("input.generator.kind: ") + e.what());
      }
      cfg.generator.constant_value = g.value("constant_value", 1.0);
      cfg.generator.block_length = g.value("block_length", 0);
      cfg.generator.block_count = g.value("block_count", 0);
      cfg.generator.bias = g.value("bias", 0.5);
      cfg.generator.height_factor = g.value("height_factor", 0.5);
      const std::string model = g.value("magnitude_model", "point-mass-one");
      if (model == "point-mass-one") {
        cfg.generator.model = MagnitudeModel::point_mass_one();
      } else if (model == "half-normal-mean-one") {
        cfg.generator.model = MagnitudeModel::half_normal_mean_one();
      } else {
        fail("input.generator.magnitude_model: unknown model " + model);
      }
    } else {
      fail("input.kind: must be file, generator, or prices; got '" + kind + "'");
    }
  }

  cfg.games = j.value("games", 1);
  if (cfg.games < 1) fail("games: must be >= 1");
  if (cfg.input_kind != InputKind::generator && cfg.games != 1) {
    fail("games: fixed-input runs play exactly 1 game");
  }

  cfg.alpha = j.value("alpha", 0.0);
  if (!(cfg.alpha >= 0.0) || !std::isfinite(cfg.alpha)) {
    fail("alpha: must be finite and >= 0 (0 calibrates first)");
  }
  cfg.calibration_n = j.value("calibration_n", 400L);
  if (cfg.calibration_n < 2) fail("calibration_n: must be >= 2");

  cfg.seed = j.value("seed", 0ull);
  cfg.threads = j.value("threads", 0);
  if (cfg.threads < 0) fail("threads: must be >= 0");

  if (!j.contains("algos") || !j["algos"].is_array() || j["algos"].empty()) {
    fail("algos: required non-empty array");
  } else {
    for (const json& a : j["algos"]) {
      if (!a.is_string()) {
        fail("algos: entries must be strings");
        continue;
      }
      try {
        cfg.algos.push_back(algo_kind_from_name(a.get<std::string>()));
      } catch (const validation_error& e) {
        fail(std::string("algos: ") + e.what());
      }
    }
  }

  if (j.contains("replay_logs")) {
    if (!j["replay_logs"].is_array()) {
      fail("replay_logs: must be an array of paths");
    } else {
      for (const json& p : j["replay_logs"]) {
        if (!p.is_string()) {
          fail("replay_logs: entries must be strings");
        } else {
          cfg.replay_logs.push_back(p.get<std::string>());
        }
      }
    }
  }
  cfg.log_dir = j.value("log_dir", std::string());

  // Cross-field checks that do not need the input materialized.
  if (cfg.input_kind == InputKind::generator) {
    for (AlgoKind a : cfg.algos) {
      if (a == AlgoKind::interval_exact && cfg.horizon > 16) {
        fail("algos: interval-exact supports horizons up to 16, got " +
             std::to_string(cfg.horizon));
      }
      if (a == AlgoKind::interval_aligned && cfg.horizon >= 1 && !is_power_of_two(cfg.horizon)) {
        fail("algos: interval-aligned needs a power-of-two horizon, got " +
             std::to_string(cfg.horizon));
      }
    }
  }

  if (!errors.empty()) {
    std::string msg = "invalid config (" + std::to_string(errors.size()) + " problems):";
    for (const std::string& e : errors) msg += "\n  - " + e;
    throw validation_error(msg);
  }
  cfg.raw_json = j.dump();
  return cfg;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  ExperimentReport report;
  report.seed = config.seed;
  report.games = config.games;
  report.config_echo = config.raw_json;

  Rng root(config.seed);

  // Materialize every game's sequence up front.
  std::vector<std::vector<double>> sequences;
  long clip_events = 0;
  switch (config.input_kind) {
    case InputKind::file: {
      Sequence s = read_sequence_file(config.input_path);
      sequences.push_back(s.values());
      report.input_description = "file:" + config.input_path;
      break;
    }
    case InputKind::prices: {
      PriceIngestResult pr = ingest_prices(std::filesystem::path(config.input_path));
      sequences.push_back(pr.bits.values());
      clip_events = pr.clip_events;
      report.input_description = "prices:" + config.input_path;
      break;
    }
    case InputKind::generator: {
      for (int g = 0; g < config.games; ++g) {
        GeneratorSpec spec = config.generator;
        spec.seed = root.split(kGenStream + static_cast<std::uint64_t>(g)).seed();
        Sequence s = generate(spec, config.horizon);
        clip_events += generate_clip_count(spec, config.horizon);
        sequences.push_back(s.values());
      }
      report.input_description = "generator:" + generator_kind_name(config.generator.kind);
      break;
    }
  }
  report.clip_events = clip_events;
  const int horizon = static_cast<int>(sequences.front().size());
  report.horizon = horizon;
  report.games = static_cast<int>(sequences.size());

  // Horizon-dependent checks that file inputs defer to here.
  for (AlgoKind a : config.algos) {
    if (a == AlgoKind::interval_exact && horizon > 16) {
      throw validation_error("interval-exact supports horizons up to 16, got " +
                             std::to_string(horizon));
    }
    if (a == AlgoKind::interval_aligned && !is_power_of_two(horizon)) {
      throw validation_error("interval-aligned needs a power-of-two horizon, got " +
                             std::to_string(horizon));
    }
  }

  double alpha_value = config.alpha;
  if (alpha_value == 0.0) {
    CalibrationParams cp;
    cp.horizon = horizon;
    cp.n = config.calibration_n;
    cp.seed = root.split(kCalibStream).seed();
    cp.threads = config.threads;
    alpha_value = estimate_alpha0(cp).alpha0;
  }
  report.alpha = alpha_value;
  const Alpha alpha(alpha_value);

  if (!config.log_dir.empty()) {
    std::filesystem::create_directories(config.log_dir);
  }

  std::vector<double> benchmarks, best_experts;
  for (const auto& seq : sequences) {
    benchmarks.push_back(payoff_value(seq, alpha));
    best_experts.push_back(best_expert_hindsight(seq));
  }
  report.mean_interval_benchmark = mean_and_stderr(benchmarks).mean;
  report.mean_best_expert = mean_and_stderr(best_experts).mean;

  for (std::size_t ai = 0; ai < config.algos.size(); ++ai) {
    const AlgoKind kind = config.algos[ai];
    AlgoSummary summary;
    summary.name = algo_kind_name(kind);

    const std::uint64_t algo_seed = root.split(kAlgoStream + ai).seed();
    PredictorState state;
    const auto start = std::chrono::steady_clock::now();
    if (kind == AlgoKind::interval_mc) {
      state = mc_precompute(horizon, alpha, algo_seed);
    } else if (kind == AlgoKind::interval_aligned) {
      state = aligned_precompute(horizon, alpha, algo_seed);
    }

    for (std::size_t g = 0; g < sequences.size(); ++g) {
      const std::span<const double> seq = sequences[g];
      GameResult result;
      switch (kind) {
        case AlgoKind::interval_exact:
          result = run_exact_game(alpha, seq);
          break;
        case AlgoKind::interval_mc:
        case AlgoKind::interval_aligned:
          result = run_predictor_game(state, seq);
          break;
        case AlgoKind::wm:
          result = run_weighted_majority_game(seq);
          break;
        case AlgoKind::const_plus:
        case AlgoKind::const_minus: {
          const double bet = kind == AlgoKind::const_plus ? 1.0 : -1.0;
          result = run_game([bet](std::span<const double>, int) { return Prediction{bet, false}; },
                            seq);
          break;
        }
      }
      summary.payoffs.push_back(result.payoff);
      summary.clamp_events += result.clamp_events;
      if (!config.log_dir.empty()) {
        std::string name = summary.name;
        std::replace(name.begin(), name.end(), '+', 'p');
        std::replace(name.begin(), name.end(), '-', 'm');
        const std::string file = sequences.size() > 1
                                     ? name + "-game" + std::to_string(g + 1) + ".csv"
                                     : name + ".csv";
        write_prediction_log_file(std::filesystem::path(config.log_dir) / file, result);
      }
    }
    const auto stop = std::chrono::steady_clock::now();
    summary.wall_seconds = std::chrono::duration<double>(stop - start).count();
    const MeanStderr ms = mean_and_stderr(summary.payoffs);
    summary.mean_payoff = ms.mean;
    summary.stderr_ = ms.stderr_;
    report.algos.push_back(std::move(summary));
  }

  for (const std::string& path : config.replay_logs) {
    GameResult log = read_prediction_log_file(path);
    std::optional<Sequence> input;
    if (config.input_kind != InputKind::generator && sequences.size() == 1 &&
        static_cast<int>(log.log.size()) == horizon) {
      input = Sequence(sequences.front());
    }
    ScoreLogResult scored = score_log(log, input, Alpha(alpha_value));
    report.replays.push_back(
        {path, scored.recorded_payoff, scored.recomputed_payoff, scored.consistent});
  }

  return report;
}

std::string experiment_report_json(const ExperimentReport& report) {
  json j;
  j["schema_version"] = report.schema_version;
  j["seed"] = report.seed;
  j["alpha"] = report.alpha;
  j["horizon"] = report.horizon;
  j["games"] = report.games;
  j["input"] = report.input_description;
  j["clip_events"] = report.clip_events;
  j["comparators"] = {{"mean_interval_benchmark", report.mean_interval_benchmark},
                      {"mean_best_expert", report.mean_best_expert}};
  j["algos"] = json::array();
  for (const AlgoSummary& a : report.algos) {
    j["algos"].push_back({{"name", a.name},
                          {"mean_payoff", a.mean_payoff},
                          {"stderr", a.stderr_},
                          {"payoffs", a.payoffs},
                          {"clamp_events", a.clamp_events},
                          {"wall_seconds", a.wall_seconds}});
  }
  j["replays"] = json::array();
  for (const ReplaySummary& r : report.replays) {
    j["replays"].push_back({{"path", r.path},
                            {"recorded_payoff", r.recorded_payoff},
                            {"recomputed_payoff", r.recomputed_payoff},
                            {"consistent", r.consistent}});
  }
  if (!report.config_echo.empty()) {
    j["config"] = json::parse(report.config_echo);
  }
  return j.dump(2);
}

ScoreLogResult score_log(const GameResult& log, const std::optional<Sequence>& input,
                         const std::optional<Alpha>& alpha) {
  ScoreLogResult result;
  result.steps = static_cast<int>(log.log.size());
  result.recorded_payoff = log.log.empty() ? 0.0 : log.log.back().cumulative;

  if (input && input->length() != result.steps) {
    throw validation_error("input length " + std::to_string(input->length()) +
                           " does not match log length " + std::to_string(result.steps));
  }

  double running = 0.0;
  bool consistent = true;
  for (int i = 0; i < result.steps; ++i) {
    const StepRecord& r = log.log[i];
    if (std::fabs(r.prediction) > 1.0) consistent = false;
    if (input && std::fabs((*input)[i] - r.observed) > 1e-12) {
      throw validation_error("log step " + std::to_string(i + 1) + " observed " +
                             std::to_string(r.observed) + " but the input sequence has " +
                             std::to_string((*input)[i]));
    }
    running += r.observed * r.prediction;
    if (std::fabs(running - r.cumulative) > 1e-9) consistent = false;
    if (r.clamped) ++result.clamp_events;
  }
  result.recomputed_payoff = running;
  result.consistent = consistent;

  if (input) {
    std::span<const double> seq = *input;
    if (alpha) result.interval_benchmark = payoff_value(seq, *alpha);
    result.regret_to_best_expert = best_expert_hindsight(seq) - running;
    // The two constant experts average to zero payoff on any sequence.
    result.regret_to_average = -running;
  }
  return result;
}

std::string score_log_json(const ScoreLogResult& result) {
  json j;
  j["schema_version"] = 1;
  j["steps"] = result.steps;
  j["recorded_payoff"] = result.recorded_payoff;
  j["recomputed_payoff"] = result.recomputed_payoff;
  j["consistent"] = result.consistent;
  j["clamp_events"] = result.clamp_events;
  j["interval_benchmark"] =
      result.interval_benchmark ? json(*result.interval_benchmark) : json(nullptr);
  j["regret_to_best_expert"] =
      result.regret_to_best_expert ? json(*result.regret_to_best_expert) : json(nullptr);
  j["regret_to_average"] = result.regret_to_average ? json(*result.regret_to_average) : json(nullptr);
  return j.dump(2);
}

}  // namespace ivr
