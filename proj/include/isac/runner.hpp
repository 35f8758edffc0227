#ifndef ISAC_RUNNER_HPP
#define ISAC_RUNNER_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "isac/geometry.hpp"
#include "isac/sca.hpp"
#include "isac/scenario.hpp"

namespace isac {

struct SlotRecord {
  int n = 0;
  TargetState bob_true;
  TargetState bob_pred;  // x[n|n-1] as handed to the optimizer
  TargetState bob_est;   // x[n] after the measurement update
  Vec2 eve;
  Vec2 uav;
  double range_meas = 0.0;
  double r_bob = 0.0;
  double r_eve = 0.0;
  double secrecy_raw = 0.0;
  double secrecy_realized = 0.0;
  int sca_iterations = 0;
  double rmse_contrib = 0.0;  // horizontal estimation error of bob_est, m
  bool feedback = false;
  bool degraded = false;
};

struct SlotTrace {
  int n = 0;
  std::vector<sca::ScaIteration> iterations;
};

struct CdfPoint {
  double value = 0.0;
  double probability = 0.0;
  bool operator==(const CdfPoint&) const = default;
};

struct RunSummary {
  std::vector<SlotRecord> records;
  std::vector<double> rmse_series;
  std::vector<CdfPoint> secrecy_cdf;
  double mean_secrecy = 0.0;
  ScenarioConfig config_echo;
  std::uint64_t seed = 0;
  int feedback_events = 0;
  bool degraded = false;
  std::vector<SlotTrace> traces;  // populated only when requested
};

struct RunOptions {
  bool record_traces = false;
};

/// Simulates slots 1..N of one scenario. Slot 1 only initializes the filter
/// from the first location report; one record is produced per slot 2..N.
RunSummary run_scenario(const ScenarioConfig& cfg, const RunOptions& options = {});

struct MonteCarloSummary {
  std::vector<RunSummary> runs;
  std::vector<double> rmse_series;
  std::vector<double> rmse_by_period_offset;
  std::vector<CdfPoint> secrecy_cdf;
  std::vector<CdfPoint> bob_rate_cdf;
  double mean_secrecy = 0.0;
  double mean_rmse = 0.0;
  bool degraded = false;
};

/// Runs `runs` repetitions with seeds cfg.rng_seed + k. `threads` <= 0 picks
/// the hardware concurrency. The result does not depend on the thread count.
MonteCarloSummary run_monte_carlo(const ScenarioConfig& cfg, int runs, int threads = 0,
                                  const RunOptions& options = {});

/// Per-slot root mean squared horizontal error across runs. All runs must
/// have the same number of records.
std::vector<double> compute_rmse(std::span<const std::vector<SlotRecord>> runs);
std::vector<double> compute_rmse(std::span<const SlotRecord> records);

/// RMSE pooled by position inside the tracking period (offset 0 is the
/// feedback slot).
std::vector<double> rmse_by_period_offset(std::span<const std::vector<SlotRecord>> runs,
                                          int period);

/// Empirical CDF: one point per distinct value, probability = fraction <= value.
std::vector<CdfPoint> empirical_cdf(std::vector<double> values);

std::vector<CdfPoint> secrecy_cdf(std::span<const SlotRecord> records);
std::vector<CdfPoint> secrecy_cdf(std::span<const std::vector<SlotRecord>> runs);

}  // namespace isac

#endif  // ISAC_RUNNER_HPP
