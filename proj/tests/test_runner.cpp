#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "isac/output.hpp"
#include "isac/runner.hpp"

using namespace isac;

namespace {

ScenarioConfig zeroNoise() {
  ScenarioConfig cfg;
  cfg.sigma_x_m = cfg.sigma_y_m = 0.0;
  cfg.sigma_vx_mps = cfg.sigma_vy_mps = 0.0;
  cfg.sigma_d_m = 0.0;
  cfg.velocity_prior_mps = cfg.bob_init.velocity();
  return cfg;
}

SlotRecord recordWithError(int n, double ex, double ey) {
  SlotRecord r;
  r.n = n;
  r.bob_true = {100, 0, 200, 0};
  r.bob_est = {100 + ex, 0, 200 + ey, 0};
  return r;
}

}  // namespace

TEST_CASE("zero-noise pursuit with alpha = 1") {
  ScenarioConfig cfg = zeroNoise();
  cfg.alpha = 1.0;
  cfg.uav_init = cfg.bob_init.position();
  const auto summary = run_scenario(cfg);
  REQUIRE(summary.records.size() == 99);
  for (const auto& r : summary.records) {
    if (r.n >= 3) CHECK(distance(r.uav, r.bob_true.position()) < 1e-3);
  }
}

TEST_CASE("zero-noise prediction equals the truth") {
  ScenarioConfig cfg = zeroNoise();
  const auto summary = run_scenario(cfg);
  for (int i = 0; i < 10; ++i) {
    const auto& r = summary.records[static_cast<std::size_t>(i)];
    CHECK(distance(r.bob_pred.position(), r.bob_true.position()) < 1e-6);
  }
}

TEST_CASE("default schedule: 99 records and 10 feedback events") {
  const auto summary = run_scenario(ScenarioConfig{});
  CHECK(summary.records.size() == 99);
  CHECK(summary.feedback_events == 10);
  const auto fb = std::count_if(summary.records.begin(), summary.records.end(),
                                [](const SlotRecord& r) { return r.feedback; });
  CHECK(fb == 9);  // slot 1 carries the tenth, with no record
  for (std::size_t i = 1; i < summary.records.size(); ++i) {
    CHECK(summary.records[i].n == summary.records[i - 1].n + 1);
  }
}

TEST_CASE("same seed gives a bitwise-identical summary") {
  ScenarioConfig cfg;
  cfg.rng_seed = 7;
  const auto a = io::to_json(run_scenario(cfg)).dump();
  const auto b = io::to_json(run_scenario(cfg)).dump();
  CHECK(a == b);
  cfg.rng_seed = 8;
  CHECK(io::to_json(run_scenario(cfg)).dump() != a);
}

TEST_CASE("UAV trajectory respects speed and region limits") {
  for (double alpha : {0.0, 0.2, 0.5, 1.0}) {
    ScenarioConfig cfg;
    cfg.alpha = alpha;
    cfg.rng_seed = 3;
    const auto s = run_scenario(cfg);
    Vec2 prev = cfg.uav_init;
    for (const auto& r : s.records) {
      CHECK(distance(r.uav, prev) <= cfg.max_step_m() + 1e-9);
      CHECK(cfg.region.contains(r.uav, 1e-9));
      prev = r.uav;
    }
  }
}

TEST_CASE("feedback slots use the reported location, others use the prediction only") {
  const auto s = run_scenario(ScenarioConfig{});
  for (const auto& r : s.records) {
    if (r.feedback) {
      CHECK(r.bob_pred.position() == r.bob_true.position());
      // Error at the feedback slot itself stays within the re-initialization spread.
      CHECK(r.rmse_contrib <= 0.15);
    } else {
      CHECK(r.bob_pred.position() != r.bob_true.position());
    }
  }
}

TEST_CASE("realized rates follow the true geometry") {
  const auto s = run_scenario(ScenarioConfig{});
  for (const auto& r : s.records) {
    CHECK(r.secrecy_raw == doctest::Approx(r.r_bob - r.r_eve));
    CHECK(r.secrecy_realized == std::max(r.secrecy_raw, 0.0));
    CHECK(r.sca_iterations >= 1);
    CHECK(r.sca_iterations <= 20);
  }
}

TEST_CASE("compute_rmse examples") {
  std::vector<SlotRecord> exact{recordWithError(2, 0, 0), recordWithError(3, 0, 0)};
  for (double v : compute_rmse(exact)) CHECK(v == 0.0);

  std::vector<SlotRecord> one{recordWithError(2, 3, 4)};
  CHECK(compute_rmse(one).front() == doctest::Approx(5.0));

  const std::vector<std::vector<SlotRecord>> runs{{recordWithError(2, 3, 4)}, {recordWithError(2, 0, 0)}};
  CHECK(compute_rmse(runs).front() == doctest::Approx(std::sqrt(12.5)));

  const std::vector<std::vector<SlotRecord>> bad{{recordWithError(2, 0, 0)}, {}};
  CHECK_THROWS(compute_rmse(bad));
}

TEST_CASE("rmse_by_period_offset groups by position in the period") {
  const std::vector<std::vector<SlotRecord>> runs{
      {recordWithError(11, 1, 0), recordWithError(12, 2, 0), recordWithError(21, 3, 0)}};
  const auto prof = rmse_by_period_offset(runs, 10);
  REQUIRE(prof.size() == 10);
  CHECK(prof[0] == doctest::Approx(std::sqrt(5.0)));
  CHECK(prof[1] == doctest::Approx(2.0));
  CHECK(prof[5] == 0.0);
}

TEST_CASE("empirical CDF examples") {
  auto cdf = empirical_cdf({4.0, 4.0, 4.0});
  REQUIRE(cdf.size() == 1);
  CHECK(cdf[0] == CdfPoint{4.0, 1.0});

  cdf = empirical_cdf({3, 1, 0, 2});
  REQUIRE(cdf.size() == 4);
  CHECK(cdf[0] == CdfPoint{0, 0.25});
  CHECK(cdf[1] == CdfPoint{1, 0.5});
  CHECK(cdf[2] == CdfPoint{2, 0.75});
  CHECK(cdf[3] == CdfPoint{3, 1.0});
}

TEST_CASE("pooled secrecy CDF equals the sorted pool") {
  ScenarioConfig cfg;
  cfg.rng_seed = 10;
  const auto a = run_scenario(cfg);
  cfg.rng_seed = 11;
  const auto b = run_scenario(cfg);
  const std::vector<std::vector<SlotRecord>> runs{a.records, b.records};
  const auto cdf = secrecy_cdf(runs);

  std::vector<double> pool;
  for (const auto& rs : runs)
    for (const auto& r : rs) pool.push_back(r.secrecy_realized);
  std::sort(pool.begin(), pool.end());
  const double n = static_cast<double>(pool.size());
  std::size_t idx = 0;
  for (const auto& p : cdf) {
    const auto last = std::upper_bound(pool.begin(), pool.end(), p.value);
    CHECK(p.probability == static_cast<double>(last - pool.begin()) / n);
    if (idx > 0) CHECK(p.value > cdf[idx - 1].value);
    ++idx;
  }
  CHECK(cdf.back().probability == 1.0);
}

TEST_CASE("Monte-Carlo results do not depend on the thread count") {
  ScenarioConfig cfg;
  cfg.n_slots = 30;
  const auto one = run_monte_carlo(cfg, 4, 1);
  const auto many = run_monte_carlo(cfg, 4, 3);
  REQUIRE(one.runs.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(io::to_json(one.runs[k]).dump() == io::to_json(many.runs[k]).dump());
    CHECK(one.runs[k].seed == cfg.rng_seed + k);
  }
  CHECK(one.rmse_series == many.rmse_series);
  CHECK(one.secrecy_cdf == many.secrecy_cdf);
}

TEST_CASE("single-slot scenario produces no records") {
  ScenarioConfig cfg;
  cfg.n_slots = 1;
  const auto s = run_scenario(cfg);
  CHECK(s.records.empty());
  CHECK(s.feedback_events == 1);
}

TEST_CASE("invalid configuration is rejected before simulation") {
  ScenarioConfig cfg;
  cfg.alpha = -0.1;
  CHECK_THROWS_AS(run_scenario(cfg), ConfigError);
  CHECK_THROWS_AS(run_monte_carlo(ScenarioConfig{}, 0), ConfigError);
}
