// Command-line front end. Every subcommand reads/writes the text formats in
// ivr/io.hpp and prints a schema-versioned JSON summary on stdout. Exit codes:
// 0 success, 1 bad input (flags, files, config), 2 internal failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ivr/baselines.hpp"
#include "ivr/calibration.hpp"
#include "ivr/experiment.hpp"
#include "ivr/generator.hpp"
#include "ivr/ingest.hpp"
#include "ivr/io.hpp"
#include "ivr/payoff.hpp"
#include "ivr/predictor.hpp"

using nlohmann::json;
using namespace ivr;

namespace {

constexpr int kCliSchemaVersion = 1;

MagnitudeModel parse_model(const std::string& name, const std::string& file) {
  if (name == "point-mass-one") return MagnitudeModel::point_mass_one();
  if (name == "half-normal-mean-one") return MagnitudeModel::half_normal_mean_one();
  if (name == "empirical-from-file") {
    if (file.empty()) {
      throw validation_error("--magnitude-file is required with the empirical model");
    }
    return MagnitudeModel::empirical(read_real_series_file(file));
  }
  throw validation_error("unknown magnitude model: " + name);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Sequence input shared by payoff/predict/baseline/score-log: plain text
// series, or a price CSV when --prices is set.
Sequence load_input(const std::string& path, bool prices) {
  if (prices) return ingest_prices(std::filesystem::path(path)).bits;
  return read_sequence_file(path);
}

struct PayoffArgs {
  double alpha = 0.0;
  std::string input;
  bool prices = false;
  bool aligned = false;
};

int cmd_payoff(const PayoffArgs& a) {
  const Sequence seq = load_input(a.input, a.prices);
  const Alpha alpha(a.alpha);
  double value = 0.0;
  Partition partition;
  if (a.aligned) {
    AlignedPayoffResult r = aligned_payoff_dp(seq, alpha);
    value = r.value;
    partition = std::move(r.partition);
  } else {
    PayoffResult r = payoff_dp(seq, alpha);
    value = r.value;
    partition = std::move(r.partition);
  }
  for (const Interval& iv : partition.intervals) {
    std::cout << iv.start << ':' << iv.end << '\n';
  }
  json j;
  j["schema_version"] = kCliSchemaVersion;
  j["value"] = value;
  j["k"] = partition.size();
  j["alpha"] = a.alpha;
  j["T"] = seq.length();
  j["aligned"] = a.aligned;
  std::cout << j.dump(2) << '\n';
  return 0;
}

struct PredictArgs {
  double alpha = 0.0;
  std::string mode = "mc";
  std::uint64_t seed = 0;
  std::string input;
  bool prices = false;
  std::string log_path;
  std::string model = "point-mass-one";
  std::string model_file;
};

int cmd_predict(const PredictArgs& a) {
  const Sequence seq = load_input(a.input, a.prices);
  const int T = seq.length();
  const Alpha alpha(a.alpha);
  const MagnitudeModel model = parse_model(a.model, a.model_file);

  GameResult result;
  if (a.mode == "exact") {
    if (model.kind() != MagnitudeModel::Kind::point_mass_one) {
      throw validation_error("magnitude models apply to --mode mc only");
    }
    result = run_exact_game(alpha, seq);
  } else if (a.mode == "mc") {
    PredictorState state = model.kind() == MagnitudeModel::Kind::point_mass_one
                               ? mc_precompute(T, alpha, a.seed)
                               : real_precompute(T, alpha, a.seed, model);
    result = run_predictor_game(state, seq);
  } else if (a.mode == "aligned") {
    if (model.kind() != MagnitudeModel::Kind::point_mass_one) {
      throw validation_error("magnitude models apply to --mode mc only");
    }
    PredictorState state = aligned_precompute(T, alpha, a.seed);
    result = run_predictor_game(state, seq);
  } else {
    throw validation_error("mode must be exact, mc, or aligned");
  }

  if (!a.log_path.empty()) write_prediction_log_file(a.log_path, result);

  json j;
  j["schema_version"] = kCliSchemaVersion;
  j["mode"] = a.mode;
  j["alpha"] = a.alpha;
  j["T"] = T;
  j["seed"] = a.seed;
  j["magnitude_model"] = model.name();
  j["payoff"] = result.payoff;
  j["clamp_events"] = result.clamp_events;
  j["interval_benchmark"] = payoff_value(seq, alpha);
  if (!a.log_path.empty()) j["log"] = a.log_path;
  std::cout << j.dump(2) << '\n';
  return 0;
}

struct BaselineArgs {
  std::string algo;
  std::string input;
  bool prices = false;
  std::string log_path;
};

int cmd_baseline(const BaselineArgs& a) {
  const Sequence seq = load_input(a.input, a.prices);
  GameResult result;
  if (a.algo == "wm") {
    result = run_weighted_majority_game(seq);
  } else if (a.algo == "const+" || a.algo == "const-") {
    const double bet = a.algo == "const+" ? 1.0 : -1.0;
    result = run_game([bet](std::span<const double>, int) { return Prediction{bet, false}; }, seq);
  } else {
    throw validation_error("algo must be wm, const+, or const-");
  }
  if (!a.log_path.empty()) write_prediction_log_file(a.log_path, result);

  json j;
  j["schema_version"] = kCliSchemaVersion;
  j["algo"] = a.algo;
  j["T"] = seq.length();
  j["payoff"] = result.payoff;
  j["best_expert"] = best_expert_hindsight(seq);
  j["regret"] = best_expert_hindsight(seq) - result.payoff;
  if (!a.log_path.empty()) j["log"] = a.log_path;
  std::cout << j.dump(2) << '\n';
  return 0;
}

struct GenerateArgs {
  std::string kind = "uniform";
  int horizon = 0;
  std::uint64_t seed = 0;
  double constant_value = 1.0;
  int block_length = 0;
  int block_count = 0;
  double bias = 0.5;
  double height_factor = 0.5;
  std::string model = "point-mass-one";
  std::string model_file;
  bool real = false;
  std::string output;
};

int cmd_generate(const GenerateArgs& a) {
  GeneratorSpec spec;
  spec.kind = generator_kind_from_name(a.kind);
  spec.seed = a.seed;
  spec.constant_value = a.constant_value;
  spec.block_length = a.block_length;
  spec.block_count = a.block_count;
  spec.bias = a.bias;
  spec.height_factor = a.height_factor;
  spec.model = parse_model(a.model, a.model_file);

  std::vector<double> values;
  long clips = 0;
  if (a.real) {
    values = generate_real(spec, a.horizon);
  } else {
    values = generate(spec, a.horizon).values();
    clips = generate_clip_count(spec, a.horizon);
  }

  if (a.output.empty()) {
    write_sequence(std::cout, values);
    return 0;
  }
  write_sequence_file(a.output, values);
  json j;
  j["schema_version"] = kCliSchemaVersion;
  j["kind"] = a.kind;
  j["T"] = a.horizon;
  j["seed"] = a.seed;
  j["real"] = a.real;
  j["clip_events"] = clips;
  j["output"] = a.output;
  std::cout << j.dump(2) << '\n';
  return 0;
}

struct CalibrateArgs {
  int horizon = 0;
  long n = 400;
  std::uint64_t seed = 0;
  bool aligned = false;
  std::string mode = "auto";
  double bisect_tol = 0.01;
  std::string grid;  // lo:hi:step
  double bracket_low = 0.5;
  double bracket_high = 10.0;
  int threads = 0;
  std::string csv_path;
};

void write_probe_csv(const std::string& path, const std::vector<AlphaProbe>& probes) {
  std::ofstream out(path);
  if (!out) throw validation_error("cannot write " + path);
  out << "alpha,mean,stderr,n\n";
  out.precision(17);
  for (const AlphaProbe& p : probes) {
    out << p.alpha << ',' << p.mean << ',' << p.stderr_ << ',' << p.n << '\n';
  }
}

int cmd_calibrate(const CalibrateArgs& a) {
  CalibrationParams params;
  params.horizon = a.horizon;
  params.n = a.n;
  params.seed = a.seed;
  params.aligned = a.aligned;
  params.tolerance = a.bisect_tol;
  params.bracket_low = a.bracket_low;
  params.bracket_high = a.bracket_high;
  params.threads = a.threads;
  if (a.mode == "auto") {
    params.mode = CalibMode::automatic;
  } else if (a.mode == "exact") {
    params.mode = CalibMode::exact;
  } else if (a.mode == "mc") {
    params.mode = CalibMode::monte_carlo;
  } else {
    throw validation_error("mode must be auto, exact, or mc");
  }

  if (!a.grid.empty()) {
    double lo = 0.0, hi = 0.0, step = 0.0;
    char c1 = 0, c2 = 0;
    std::istringstream in(a.grid);
    if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !in.eof()) {
      throw validation_error("--alpha-grid expects lo:hi:step");
    }
    if (!(step > 0.0) || hi < lo) throw validation_error("--alpha-grid expects lo <= hi, step > 0");
    std::vector<double> alphas;
    for (double x = lo; x <= hi + 1e-12; x += step) alphas.push_back(x);
    const std::vector<AlphaProbe> probes = alpha_grid_scan(params, alphas);
    if (!a.csv_path.empty()) write_probe_csv(a.csv_path, probes);
    json j;
    j["schema_version"] = kCliSchemaVersion;
    j["horizon"] = a.horizon;
    j["aligned"] = a.aligned;
    j["seed"] = a.seed;
    j["probes"] = json::array();
    for (const AlphaProbe& p : probes) {
      j["probes"].push_back({{"alpha", p.alpha}, {"mean", p.mean}, {"stderr", p.stderr_}, {"n", p.n}});
    }
    std::cout << j.dump(2) << '\n';
    return 0;
  }

  const CalibrationReport report = estimate_alpha0(params);
  if (!a.csv_path.empty()) write_probe_csv(a.csv_path, report.probes);
  std::cout << calibration_report_json(report) << '\n';
  return 0;
}

struct BacktestArgs {
  std::string config_path;
};

int cmd_backtest(const BacktestArgs& a) {
  const ExperimentConfig config = parse_experiment_config(slurp(a.config_path));
  const ExperimentReport report = run_experiment(config);
  std::cout << experiment_report_json(report) << '\n';
  return 0;
}

struct ScoreLogArgs {
  std::string log_path;
  std::string input;
  bool prices = false;
  double alpha = -1.0;  // negative: not provided
};

int cmd_score_log(const ScoreLogArgs& a) {
  const GameResult log = read_prediction_log_file(a.log_path);
  std::optional<Sequence> input;
  if (!a.input.empty()) input = load_input(a.input, a.prices);
  std::optional<Alpha> alpha;
  if (a.alpha >= 0.0) alpha = Alpha(a.alpha);
  const ScoreLogResult result = score_log(log, input, alpha);
  std::cout << score_log_json(result) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  int rc = 0;
  CLI::App app{"optimal per-interval regret prediction toolkit"};
  app.set_version_flag("--version", "0.1.0");
  app.require_subcommand(1);

  PayoffArgs payoff_args;
  CLI::App* payoff = app.add_subcommand("payoff", "best-partition value of a sequence");
  payoff->add_option("--alpha", payoff_args.alpha, "penalty scale (>= 0)")->required();
  payoff->add_option("--input", payoff_args.input, "sequence file")->required();
  payoff->add_flag("--prices", payoff_args.prices, "input is a price CSV (timestamp,price)");
  payoff->add_flag("--aligned", payoff_args.aligned, "restrict to aligned partitions");
  payoff->callback([&] { rc = cmd_payoff(payoff_args); });

  PredictArgs predict_args;
  CLI::App* predict = app.add_subcommand("predict", "play the betting game over a sequence");
  predict->add_option("--alpha", predict_args.alpha, "penalty scale (>= 0)")->required();
  predict->add_option("--mode", predict_args.mode, "exact | mc | aligned")->required();
  predict->add_option("--seed", predict_args.seed, "completion seed")->envname("IVR_SEED");
  predict->add_option("--input", predict_args.input, "sequence file")->required();
  predict->add_flag("--prices", predict_args.prices, "input is a price CSV");
  predict->add_option("--log", predict_args.log_path, "write the prediction log CSV here");
  predict->add_option("--magnitude-model", predict_args.model,
                      "point-mass-one | half-normal-mean-one | empirical-from-file");
  predict->add_option("--magnitude-file", predict_args.model_file,
                      "observed magnitudes for the empirical model");
  predict->callback([&] { rc = cmd_predict(predict_args); });

  BaselineArgs baseline_args;
  CLI::App* baseline = app.add_subcommand("baseline", "play a baseline bettor over a sequence");
  baseline->add_option("--algo", baseline_args.algo, "wm | const+ | const-")->required();
  baseline->add_option("--input", baseline_args.input, "sequence file")->required();
  baseline->add_flag("--prices", baseline_args.prices, "input is a price CSV");
  baseline->add_option("--log", baseline_args.log_path, "write the prediction log CSV here");
  baseline->callback([&] { rc = cmd_baseline(baseline_args); });

  GenerateArgs generate_args;
  CLI::App* generate_cmd = app.add_subcommand("generate", "emit a test sequence");
  generate_cmd->add_option("--kind", generate_args.kind,
                           "uniform | constant | alternating | biased-blocks | "
                           "low-height-blocks | real-signs-adversarial");
  generate_cmd->add_option("--T", generate_args.horizon, "sequence length")->required();
  generate_cmd->add_option("--seed", generate_args.seed, "generator seed")->envname("IVR_SEED");
  generate_cmd->add_option("--constant-value", generate_args.constant_value,
                           "value for kind constant");
  generate_cmd->add_option("--block-length", generate_args.block_length, "block kinds: x");
  generate_cmd->add_option("--block-count", generate_args.block_count, "block kinds: k");
  generate_cmd->add_option("--bias", generate_args.bias, "biased-blocks lean probability");
  generate_cmd->add_option("--height-factor", generate_args.height_factor,
                           "low-height-blocks: the c' in |h| <= 2c'sqrt(x)");
  generate_cmd->add_option("--magnitude-model", generate_args.model,
                           "real-signs-adversarial magnitude model");
  generate_cmd->add_option("--magnitude-file", generate_args.model_file,
                           "observed magnitudes for the empirical model");
  generate_cmd->add_flag("--real", generate_args.real, "emit unclipped real values");
  generate_cmd->add_option("--output", generate_args.output,
                           "write here and print a JSON summary (default: stdout)");
  generate_cmd->callback([&] { rc = cmd_generate(generate_args); });

  CalibrateArgs calibrate_args;
  CLI::App* calibrate = app.add_subcommand("calibrate", "estimate the feasibility threshold");
  calibrate->add_option("--T", calibrate_args.horizon, "horizon")->required();
  calibrate->add_option("--n", calibrate_args.n, "sample size per probe (sampled mode)");
  calibrate->add_option("--seed", calibrate_args.seed, "sampling seed")->envname("IVR_SEED");
  calibrate->add_flag("--aligned", calibrate_args.aligned, "calibrate the aligned payoff");
  calibrate->add_option("--mode", calibrate_args.mode, "auto | exact | mc");
  calibrate->add_option("--bisect", calibrate_args.bisect_tol, "bisection tolerance on alpha");
  calibrate->add_option("--alpha-grid", calibrate_args.grid, "scan lo:hi:step instead of bisecting");
  calibrate->add_option("--bracket-low", calibrate_args.bracket_low, "bisection bracket low end");
  calibrate->add_option("--bracket-high", calibrate_args.bracket_high, "bisection bracket high end");
  calibrate->add_option("--threads", calibrate_args.threads, "worker threads (0 = all cores)");
  calibrate->add_option("--csv", calibrate_args.csv_path, "write per-alpha probes CSV here");
  calibrate->callback([&] { rc = cmd_calibrate(calibrate_args); });

  BacktestArgs backtest_args;
  CLI::App* backtest = app.add_subcommand("backtest", "run a configured experiment");
  backtest->add_option("--config", backtest_args.config_path, "experiment config JSON file")
      ->required();
  backtest->callback([&] { rc = cmd_backtest(backtest_args); });

  ScoreLogArgs score_args;
  CLI::App* score = app.add_subcommand("score-log", "recompute and verify a prediction log");
  score->add_option("--log", score_args.log_path, "prediction log CSV")->required();
  score->add_option("--input", score_args.input, "cross-check against this sequence file");
  score->add_flag("--prices", score_args.prices, "input is a price CSV");
  score->add_option("--alpha", score_args.alpha, "also report the interval benchmark");
  score->callback([&] { rc = cmd_score_log(score_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return rc;
}
