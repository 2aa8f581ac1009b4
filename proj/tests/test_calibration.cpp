#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "ivr/calibration.hpp"
#include "ivr/payoff.hpp"

using namespace ivr;

TEST_CASE("exact mean over all sign sequences at tiny horizons") {
  // T=1: both sequences score 1 - alpha
  for (double a : {0.0, 0.5, 1.0, 1.5}) {
    CHECK(exact_mean_payoff(1, Alpha(a)) == doctest::Approx(1.0 - a).epsilon(1e-12));
  }
  // T=2 at alpha=2: the aligned-sign sequences take the whole interval
  // (2 - 2*sqrt(2)), the mixed ones fall back to singletons (-2)
  CHECK(exact_mean_payoff(2, Alpha(2.0)) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS((void)exact_mean_payoff(17, Alpha(1.0)), validation_error);
  CHECK_THROWS_AS((void)exact_mean_payoff(0, Alpha(1.0)), validation_error);
}

TEST_CASE("exact mean decreases strictly in alpha") {
  double prev = exact_mean_payoff(6, Alpha(0.0));
  for (double a = 0.2; a <= 3.0; a += 0.2) {
    const double cur = exact_mean_payoff(6, Alpha(a));
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("exact mean is independent of the thread count") {
  const double one = exact_mean_payoff(12, Alpha(1.3), false, 1);
  const double four = exact_mean_payoff(12, Alpha(1.3), false, 4);
  CHECK(one == four);
}

TEST_CASE("sampled mean agrees with the exact mean inside its own error bars") {
  const int T = 16;
  const Alpha a(1.6);
  const double exact = exact_mean_payoff(T, a);
  const MeanStderr mc = mc_mean_payoff(T, a, 100000, 12345);
  CHECK(mc.stderr_ > 0.0);
  CHECK(std::fabs(mc.mean - exact) <= 3.0 * mc.stderr_);
}

TEST_CASE("sampled mean at the production scale point straddles zero") {
  const MeanStderr mc = mc_mean_payoff(389, Alpha(1.96), 400, 2024);
  CHECK(std::fabs(mc.mean) <= 3.0 * mc.stderr_);
}

TEST_CASE("common random numbers keep the sampled mean monotone in alpha") {
  double prev = mc_mean_payoff(32, Alpha(0.5), 500, 7).mean;
  for (double a = 0.75; a <= 3.0; a += 0.25) {
    const double cur = mc_mean_payoff(32, Alpha(a), 500, 7).mean;
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("sampling is deterministic and thread-count independent") {
  const MeanStderr a = mc_mean_payoff(24, Alpha(1.4), 300, 99);
  const MeanStderr b = mc_mean_payoff(24, Alpha(1.4), 300, 99);
  CHECK(a.mean == b.mean);
  CHECK(a.stderr_ == b.stderr_);
  const MeanStderr c = mc_mean_payoff(24, Alpha(1.4), 300, 99, false, 1);
  const MeanStderr d = mc_mean_payoff(24, Alpha(1.4), 300, 99, false, 3);
  CHECK(c.mean == d.mean);
  CHECK(c.mean == a.mean);
}

TEST_CASE("threshold search on the exact path lands on the closed form") {
  // At T=1 the mean is 1 - alpha, so the threshold is exactly 1.
  CalibrationParams params;
  params.horizon = 1;
  params.tolerance = 1e-6;
  params.mode = CalibMode::exact;
  const CalibrationReport rep = estimate_alpha0(params);
  CHECK(rep.mode == "exact");
  CHECK(rep.alpha0 == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(rep.ci_low <= 1.0 + 1e-6);
  CHECK(rep.ci_high >= 1.0 - 1e-6);
  CHECK(rep.ci_high - rep.ci_low <= 2e-6);
  CHECK(rep.probes.size() >= 10);
}

TEST_CASE("automatic mode uses enumeration at small horizons and sampling above") {
  CalibrationParams small;
  small.horizon = 8;
  CHECK(estimate_alpha0(small).mode == "exact");

  CalibrationParams big;
  big.horizon = 17;
  big.n = 300;
  const CalibrationReport rep = estimate_alpha0(big);
  CHECK(rep.mode == "montecarlo");
  CHECK(rep.n == 300);
  CHECK(rep.ci_high > rep.ci_low);
}

TEST_CASE("threshold estimates stay in the plausible band") {
  for (int T : {4, 8, 16}) {
    CalibrationParams params;
    params.horizon = T;
    const CalibrationReport rep = estimate_alpha0(params);
    CHECK(rep.alpha0 >= 1.0);
    CHECK(rep.alpha0 <= 10.0);
  }
  // deterministic end to end
  CalibrationParams params;
  params.horizon = 20;
  params.n = 250;
  params.seed = 31;
  const CalibrationReport a = estimate_alpha0(params);
  const CalibrationReport b = estimate_alpha0(params);
  CHECK(a.alpha0 == b.alpha0);
  CHECK(a.ci_low == b.ci_low);
  CHECK(a.ci_high == b.ci_high);
}

TEST_CASE("aligned threshold sits below the unrestricted one") {
  // Restricting to aligned partitions lowers every payoff, so the aligned
  // mean crosses zero at a smaller alpha... the aligned threshold is LOWER.
  CalibrationParams general;
  general.horizon = 16;
  CalibrationParams aligned = general;
  aligned.aligned = true;
  const double a_general = estimate_alpha0(general).alpha0;
  const double a_aligned = estimate_alpha0(aligned).alpha0;
  CHECK(a_aligned <= a_general);
}

TEST_CASE("feasibility transfers from aligned to scaled-penalty unrestricted") {
  // If random aligned play is unprofitable at alpha, unrestricted play is
  // unprofitable at factor*alpha, because any partition refines into aligned
  // pieces at a sqrt-penalty inflation bounded by the factor.
  const int T = 16;
  for (double a = 0.6; a <= 1.4; a += 0.2) {
    const double aligned_mean = exact_mean_payoff(T, Alpha(a), /*aligned=*/true);
    if (aligned_mean <= 0.0) {
      CHECK(exact_mean_payoff(T, Alpha(kAlignedPenaltyFactor * a)) <= 1e-12);
    }
  }
}

TEST_CASE("bracket misuse yields actionable errors") {
  CalibrationParams low;
  low.horizon = 8;
  low.bracket_low = 5.0;
  low.bracket_high = 10.0;
  CHECK_THROWS_WITH_AS((void)estimate_alpha0(low), doctest::Contains("lower bracket_low"),
                       validation_error);

  CalibrationParams high;
  high.horizon = 8;
  high.bracket_low = 0.1;
  high.bracket_high = 0.3;
  CHECK_THROWS_WITH_AS((void)estimate_alpha0(high), doctest::Contains("raise bracket_high"),
                       validation_error);

  CalibrationParams bad;
  bad.horizon = 0;
  CHECK_THROWS_AS((void)estimate_alpha0(bad), validation_error);
  bad.horizon = 8;
  bad.tolerance = 0.0;
  CHECK_THROWS_AS((void)estimate_alpha0(bad), validation_error);
  bad.tolerance = 0.01;
  bad.n = 1;
  bad.mode = CalibMode::monte_carlo;  // exact enumeration never touches n
  CHECK_THROWS_WITH_AS((void)estimate_alpha0(bad), doctest::Contains("at least 2"),
                       validation_error);
  bad.n = 400;
  bad.horizon = 17;
  bad.mode = CalibMode::exact;
  CHECK_THROWS_AS((void)estimate_alpha0(bad), validation_error);
}

TEST_CASE("grid scan shares the calibration sample and reports decreasing means") {
  CalibrationParams params;
  params.horizon = 24;
  params.n = 400;
  params.seed = 5;
  const std::vector<double> alphas{0.5, 1.0, 1.5, 2.0, 2.5};
  const std::vector<AlphaProbe> probes = alpha_grid_scan(params, alphas);
  REQUIRE(probes.size() == alphas.size());
  for (std::size_t i = 0; i < probes.size(); ++i) {
    CHECK(probes[i].alpha == alphas[i]);
    CHECK(probes[i].n == 400);
    const MeanStderr direct = mc_mean_payoff(24, Alpha(alphas[i]), 400, 5);
    CHECK(probes[i].mean == direct.mean);
    if (i > 0) CHECK(probes[i].mean < probes[i - 1].mean);
  }
}

TEST_CASE("report serializes with a schema version and its probe trace") {
  CalibrationParams params;
  params.horizon = 8;
  const CalibrationReport rep = estimate_alpha0(params);
  const nlohmann::json j = nlohmann::json::parse(calibration_report_json(rep));
  CHECK(j.at("schema_version").get<int>() == 1);
  CHECK(j.at("horizon").get<int>() == 8);
  CHECK(j.at("mode").get<std::string>() == "exact");
  CHECK(j.at("alpha0").get<double>() == rep.alpha0);
  CHECK(j.at("ci_low").get<double>() <= j.at("ci_high").get<double>());
  REQUIRE(j.at("probes").is_array());
  CHECK(j.at("probes").size() == rep.probes.size());
  CHECK(j.at("probes")[0].contains("mean"));
  CHECK(j.at("probes")[0].contains("stderr"));
}
