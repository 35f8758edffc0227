// Acceptance suite. Prints one PASS/FAIL line per criterion; exits nonzero
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "isac/output.hpp"
#include "isac/runner.hpp"
#include "isac/sca.hpp"
#include "oracles.hpp"

using namespace isac;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double secondsSince(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("%s [%d] %s: %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct PooledStats {
  double mean_uav_bob = 0.0;
  double min_boundary = 0.0;
  double positive_fraction = 0.0;
};

PooledStats pooled(const MonteCarloSummary& mc, const Region& region) {
  PooledStats s;
  s.min_boundary = std::numeric_limits<double>::infinity();
  std::size_t n = 0;
  std::size_t positive = 0;
  for (const auto& run : mc.runs) {
    for (const auto& r : run.records) {
      s.mean_uav_bob += distance(r.uav, r.bob_true.position());
      s.min_boundary = std::min(s.min_boundary, region.distanceToBoundary(r.uav));
      if (r.secrecy_realized > 0.0) ++positive;
      ++n;
    }
  }
  s.mean_uav_bob /= static_cast<double>(n);
  s.positive_fraction = static_cast<double>(positive) / static_cast<double>(n);
  return s;
}

void boundDominance() {
  const auto t0 = Clock::now();
  std::mt19937_64 gen(101);
  std::uniform_real_distribution<double> u(0.0, 1000.0);
  double worst_bob = 0.0;
  double worst_standoff = 0.0;
  bool ok = true;
  for (int i = 0; i < 1000; ++i) {
    sca::SubproblemInstance inst{{u(gen), u(gen)}, {u(gen), u(gen)}, {u(gen), u(gen)}, {u(gen), u(gen)},
                                 sca::LinkPhysics{}};
    const Vec2 q{u(gen), u(gen)};
    const double exact = sca::bob_rate(q, inst.b_hat, inst.physics);
    const double bound = sca::rb_lower_bound(q, inst);
    const double at_r = sca::rb_lower_bound(inst.q_r, inst);
    const double exact_r = sca::bob_rate(inst.q_r, inst.b_hat, inst.physics);
    worst_bob = std::max(worst_bob, (bound - exact) / std::fabs(exact));
    ok = ok && bound <= exact + 1e-9 * std::fabs(exact);
    ok = ok && std::fabs(at_r - exact_r) <= 1e-9 * std::fabs(exact_r);

    const double d2 = oracle::dist2(q, inst.w);
    const double lin = sca::linearized_standoff(q, inst.q_r, inst.w);
    const double d2_r = oracle::dist2(inst.q_r, inst.w);
    const double lin_r = sca::linearized_standoff(inst.q_r, inst.q_r, inst.w);
    worst_standoff = std::max(worst_standoff, (lin - d2) / std::max(d2, 1e-300));
    ok = ok && lin <= d2 + 1e-9 * d2;
    ok = ok && std::fabs(lin_r - d2_r) <= 1e-9 * d2_r;
  }
  const double elapsed = secondsSince(t0);
  report(1, "bound dominance", ok && elapsed < 1.0,
         fmt("1000 triples, max rel excess bob %.3g standoff %.3g, %.3f s", worst_bob, worst_standoff,
             elapsed));
}

void subproblemOracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 gen(202);
  double worst = 0.0;
  bool ok = true;
  for (int i = 0; i < 50; ++i) {
    const auto inst = oracle::randomInstance(gen);
    const auto sol = sca::solve_subproblem(inst);
    const auto grid = oracle::gridOptimum(inst, 201, 2);
    worst = std::max(worst, std::fabs(sol.objective - grid.value) / std::max(std::fabs(grid.value), 1.0));
    ok = ok && oracle::relClose(sol.objective, grid.value, 1e-4) && oracle::feasible(sol.q_star, inst);
  }
  const double elapsed = secondsSince(t0);
  report(2, "subproblem oracle", ok && elapsed < 30.0,
         fmt("50 instances, max rel gap %.3g, %.2f s", worst, elapsed));
}

void scaMonotonicity() {
  std::mt19937_64 gen(303);
  bool ok = true;
  int max_iters = 0;
  int degraded = 0;
  double worst_drop = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto inst = oracle::randomInstance(gen);
    const auto res = sca::sca_iterate(inst.q_prev, inst.b_hat, inst.w, inst.physics, {});
    double prev = sca::true_objective(inst.q_prev, inst.b_hat, inst.w, inst.physics);
    for (const auto& it : res.trace) {
      worst_drop = std::max(worst_drop, (prev - it.true_objective) / std::max(std::fabs(prev), 1.0));
      ok = ok && it.true_objective >= prev - 1e-9 * std::fabs(prev);
      ok = ok && oracle::feasible(it.q, inst);
      prev = it.true_objective;
    }
    max_iters = std::max(max_iters, res.iterations());
    ok = ok && res.iterations() >= 1 && res.iterations() <= 20;
    if (res.degraded) ++degraded;
  }
  report(3, "SCA monotonicity", ok && degraded == 0,
         fmt("100 calls, max iterations %d, max rel drop %.3g, degraded %d", max_iters, worst_drop, degraded));
}

void ekfZeroNoise() {
  ScenarioConfig cfg;
  cfg.n_slots = 11;
  cfg.sigma_x_m = cfg.sigma_y_m = 0.0;
  cfg.sigma_vx_mps = cfg.sigma_vy_mps = 0.0;
  cfg.sigma_d_m = 0.0;
  cfg.feedback_period = 1000;
  cfg.velocity_prior_mps = {cfg.bob_init.vx, cfg.bob_init.vy};
  const auto run = run_scenario(cfg);
  double worst = 0.0;
  for (const auto& r : run.records) {
    worst = std::max(worst, distance(r.bob_pred.position(), r.bob_true.position()));
  }
  report(4, "EKF zero-noise exactness", run.records.size() == 10 && worst < 1e-6,
         fmt("%zu slots, max prediction error %.3g m", run.records.size(), worst));
}

void ekfStatistics() {
  ScenarioConfig cfg;
  const auto mc = run_monte_carlo(cfg, 100, 0);
  double worst = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < mc.runs[0].records.size(); ++i) {
    if (!mc.runs[0].records[i].feedback) continue;
    worst = std::max(worst, mc.rmse_series[i]);
    ++count;
  }
  std::string profile;
  for (std::size_t k = 0; k < mc.rmse_by_period_offset.size(); ++k) {
    profile += fmt("%s%.3f", k ? " " : "", mc.rmse_by_period_offset[k]);
  }
  report(5, "EKF statistical sanity", count > 0 && worst < 0.5,
         fmt("max RMSE at %d feedback slots %.4f m; within-period RMSE profile [%s] m", count, worst,
             profile.c_str()));
}

void alphaTrends() {
  const Region region = ScenarioConfig{}.region;
  std::vector<PooledStats> stats;
  std::vector<double> secrecy;
  const std::vector<double> alphas{0.0, 0.2, 0.5, 1.0};
  for (double a : alphas) {
    ScenarioConfig cfg;
    cfg.alpha = a;
    const auto mc = run_monte_carlo(cfg, 100, 0);
    stats.push_back(pooled(mc, region));
    secrecy.push_back(mc.mean_secrecy);
  }
  const bool ordered = stats[3].mean_uav_bob < stats[2].mean_uav_bob && stats[2].mean_uav_bob < stats[1].mean_uav_bob;
  report(6, "alpha trend (a) UAV-Bob distance ordering", ordered,
         fmt("mean distance alpha=1 %.3f m < 0.5 %.3f m < 0.2 %.3f m", stats[3].mean_uav_bob,
             stats[2].mean_uav_bob, stats[1].mean_uav_bob));
  const bool best = secrecy[2] > secrecy[0] && secrecy[2] > secrecy[3];
  report(6, "alpha trend (b) secrecy peaks at 0.5", best,
         fmt("mean realized secrecy alpha=0 %.1f, 0.5 %.1f, 1 %.1f bit/s", secrecy[0], secrecy[2], secrecy[3]));
  report(6, "alpha trend (c) alpha=0.2 reaches the boundary", stats[1].min_boundary <= 1.0,
         fmt("closest approach %.3g m", stats[1].min_boundary));
}

void noiseRatioTrend() {
  const Region region = ScenarioConfig{}.region;
  std::vector<double> fraction;
  for (double ratio : {1.0, 3.0, 10.0}) {
    ScenarioConfig cfg;
    cfg.alpha = 0.5;
    cfg.eve_noise_w = cfg.noise_w / ratio;
    fraction.push_back(pooled(run_monte_carlo(cfg, 100, 0), region).positive_fraction);
  }
  const bool ok = fraction[0] >= fraction[1] && fraction[1] >= fraction[2] && fraction[0] > 0.5 && fraction[1] > 0.5;
  report(7, "noise-ratio trend", ok,
         fmt("positive-secrecy fraction ratio 1 %.3f, 3 %.3f, 10 %.3f", fraction[0], fraction[1], fraction[2]));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void determinism() {
  ScenarioConfig cfg;
  cfg.rng_seed = 42;
  cfg.sca_trace = true;
  const auto base = fs::temp_directory_path() / "isac_acceptance_determinism";
  fs::remove_all(base);
  // Different worker counts must not change the bundle either.
  const auto a = run_monte_carlo(cfg, 8, 1, {true});
  const auto b = run_monte_carlo(cfg, 8, 4, {true});
  const auto files_a = io::write_bundle(base / "a", a, cfg, io::EmitFormat::kBoth);
  const auto files_b = io::write_bundle(base / "b", b, cfg, io::EmitFormat::kBoth);
  bool ok = files_a.size() == files_b.size() && !files_a.empty();
  for (std::size_t i = 0; ok && i < files_a.size(); ++i) {
    ok = files_a[i].filename() == files_b[i].filename() && slurp(files_a[i]) == slurp(files_b[i]);
  }
  fs::remove_all(base);
  report(8, "determinism", ok, fmt("%zu files compared byte for byte", files_a.size()));
}

void performance() {
  ScenarioConfig cfg;
  auto t0 = Clock::now();
  const auto single = run_scenario(cfg);
  const double single_s = secondsSince(t0);
  t0 = Clock::now();
  const auto mc = run_monte_carlo(cfg, 100, 1);
  const double mc_s = secondsSince(t0);
  report(9, "performance", single_s < 2.0 && mc_s < 60.0 && !single.records.empty() && mc.runs.size() == 100,
         fmt("single N=%d run %.3f s, 100 runs on one thread %.2f s", cfg.n_slots, single_s, mc_s));
}

}  // namespace

int main() {
  boundDominance();
  subproblemOracle();
  scaMonotonicity();
  ekfZeroNoise();
  ekfStatistics();
  alphaTrends();
  noiseRatioTrend();
  determinism();
  performance();
  std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
