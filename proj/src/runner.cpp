#include "isac/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "isac/channel.hpp"
#include "isac/ekf.hpp"
#include "isac/rng.hpp"
#include "isac/sensing.hpp"

namespace isac {

namespace {

double horizontalError(const TargetState& est, const TargetState& truth) {
  return distance(est.position(), truth.position());
}

double mean(std::span<const double> v) {
  if (v.empty()) return 0.0;
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

}  // namespace

RunSummary run_scenario(const ScenarioConfig& cfg, const RunOptions& options) {
  cfg.validate();

  RunSummary summary;
  summary.config_echo = cfg;
  summary.seed = cfg.rng_seed;

  Rng rng(cfg.rng_seed);
  const auto phi = ekf::transition_matrix(cfg.dt_s);
  const auto process_noise =
      ekf::ProcessNoise::fromSigmas(cfg.sigma_x_m, cfg.sigma_vx_mps, cfg.sigma_y_m, cfg.sigma_vy_mps);
  const auto physics = sca::LinkPhysics::fromConfig(cfg);
  const sca::ScaOptions sca_options{cfg.sca_eps_bps, cfg.sca_max_iters, {}};
  const double sigma_d2 = cfg.sigma_d_m * cfg.sigma_d_m;

  TargetState bob = cfg.bob_init;
  Vec2 uav = cfg.uav_init;

  ekf::FilterState filter;
  filter.estimate = {bob.x, cfg.velocity_prior_mps.x, bob.y, cfg.velocity_prior_mps.y};
  filter = ekf::apply_feedback(filter, bob.position(), cfg.feedback_sigma_m,
                               cfg.feedback_vel_sigma_mps);
  summary.feedback_events = 1;

  summary.records.reserve(static_cast<std::size_t>(cfg.n_slots > 1 ? cfg.n_slots - 1 : 0));
  for (int n = 2; n <= cfg.n_slots; ++n) {
    // Ground truth for slot n. The optimizer never reads it outside
    // feedback slots.
    TransitionNoise noise{};
    noise[0] = rng.normal(cfg.sigma_x_m);
    noise[1] = rng.normal(cfg.sigma_vx_mps);
    noise[2] = rng.normal(cfg.sigma_y_m);
    noise[3] = rng.normal(cfg.sigma_vy_mps);
    bob = step_target(bob, cfg.dt_s, noise);

    ekf::FilterState predicted = ekf::predict(filter, phi, process_noise);
    const bool feedback = (n - 1) % cfg.feedback_period == 0;
    if (feedback) {
      predicted = ekf::apply_feedback(predicted, bob.position(), cfg.feedback_sigma_m,
                                      cfg.feedback_vel_sigma_mps);
      ++summary.feedback_events;
    }

    const Vec2 eve = eve_position(n, cfg.eve_waypoints, cfg.dt_s);
    sca::ScaResult planned =
        sca::sca_iterate(uav, predicted.estimate.position(), eve, physics, sca_options);
    uav = planned.q;

    const double range = measure_range(true_distance(uav, cfg.h_m, bob.position()), cfg.sigma_d_m, rng);
    const auto h_row = ekf::range_jacobian(predicted.estimate, uav, cfg.h_m);
    const double predicted_range = true_distance(uav, cfg.h_m, predicted.estimate.position());
    try {
      const auto gain = ekf::kalman_gain(predicted.cov, h_row, sigma_d2);
      filter = ekf::update(predicted, gain, h_row, range, predicted_range);
    } catch (const ekf::DegenerateInnovation&) {
      // Zero information and zero ranging noise: keep the prediction.
      filter = predicted;
    }

    SlotRecord rec;
    rec.n = n;
    rec.bob_true = bob;
    rec.bob_pred = predicted.estimate;
    rec.bob_est = filter.estimate;
    rec.eve = eve;
    rec.uav = uav;
    rec.range_meas = range;
    rec.r_bob = achievable_rate(cfg.p0_w, channel_gain(uav, cfg.h_m, bob.position(), cfg.rho0),
                                cfg.noise_w, cfg.bandwidth_hz);
    rec.r_eve = achievable_rate(cfg.p0_w, channel_gain(uav, cfg.h_m, eve, cfg.rho0),
                                cfg.eve_noise_w, cfg.bandwidth_hz);
    const SecrecyRate s = secrecy_rate(rec.r_bob, rec.r_eve);
    rec.secrecy_raw = s.raw_bps;
    rec.secrecy_realized = s.realized_bps;
    rec.sca_iterations = planned.iterations();
    rec.rmse_contrib = horizontalError(rec.bob_est, bob);
    rec.feedback = feedback;
    rec.degraded = planned.degraded;
    summary.degraded = summary.degraded || planned.degraded;
    summary.records.push_back(rec);

    if (options.record_traces) summary.traces.push_back({n, std::move(planned.trace)});
  }

  summary.rmse_series = compute_rmse(summary.records);
  summary.secrecy_cdf = secrecy_cdf(summary.records);
  std::vector<double> realized;
  realized.reserve(summary.records.size());
  for (const auto& r : summary.records) realized.push_back(r.secrecy_realized);
  summary.mean_secrecy = mean(realized);
  return summary;
}

MonteCarloSummary run_monte_carlo(const ScenarioConfig& cfg, int runs, int threads,
                                  const RunOptions& options) {
  if (runs < 1) throw ConfigError("runs", "must be >= 1");
  cfg.validate();

  MonteCarloSummary mc;
  mc.runs.resize(static_cast<std::size_t>(runs));

  unsigned workers = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
  workers = std::clamp(workers, 1u, static_cast<unsigned>(runs));

  std::atomic<int> next{0};
  auto work = [&] {
    for (int k = next++; k < runs; k = next++) {
      ScenarioConfig run_cfg = cfg;
      run_cfg.rng_seed = cfg.rng_seed + static_cast<std::uint64_t>(k);
      mc.runs[static_cast<std::size_t>(k)] = run_scenario(run_cfg, options);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
  }

  std::vector<std::vector<SlotRecord>> all;
  all.reserve(mc.runs.size());
  for (auto& run : mc.runs) {
    all.push_back(run.records);
    mc.degraded = mc.degraded || run.degraded;
  }
  mc.rmse_series = compute_rmse(all);
  mc.rmse_by_period_offset = rmse_by_period_offset(all, cfg.feedback_period);
  mc.secrecy_cdf = secrecy_cdf(all);

  std::vector<double> bob_rates;
  std::vector<double> realized;
  for (const auto& records : all) {
    for (const auto& r : records) {
      bob_rates.push_back(r.r_bob);
      realized.push_back(r.secrecy_realized);
    }
  }
  mc.bob_rate_cdf = empirical_cdf(bob_rates);
  mc.mean_secrecy = mean(realized);
  mc.mean_rmse = mean(mc.rmse_series);
  return mc;
}

std::vector<double> compute_rmse(std::span<const std::vector<SlotRecord>> runs) {
  if (runs.empty()) return {};
  const std::size_t slots = runs.front().size();
  std::vector<double> sum(slots, 0.0);
  for (const auto& records : runs) {
    if (records.size() != slots) throw std::invalid_argument("compute_rmse: runs differ in length");
    for (std::size_t i = 0; i < slots; ++i) {
      const double e = horizontalError(records[i].bob_est, records[i].bob_true);
      sum[i] += e * e;
    }
  }
  for (double& v : sum) v = std::sqrt(v / static_cast<double>(runs.size()));
  return sum;
}

std::vector<double> compute_rmse(std::span<const SlotRecord> records) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(horizontalError(r.bob_est, r.bob_true));
  return out;
}

std::vector<double> rmse_by_period_offset(std::span<const std::vector<SlotRecord>> runs,
                                          int period) {
  if (period < 1) throw std::invalid_argument("rmse_by_period_offset: period must be >= 1");
  std::vector<double> sum(static_cast<std::size_t>(period), 0.0);
  std::vector<int> count(static_cast<std::size_t>(period), 0);
  for (const auto& records : runs) {
    for (const auto& r : records) {
      const auto k = static_cast<std::size_t>((r.n - 1) % period);
      const double e = horizontalError(r.bob_est, r.bob_true);
      sum[k] += e * e;
      ++count[k];
    }
  }
  for (std::size_t k = 0; k < sum.size(); ++k) {
    sum[k] = count[k] > 0 ? std::sqrt(sum[k] / count[k]) : 0.0;
  }
  return sum;
}

std::vector<CdfPoint> empirical_cdf(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  std::vector<CdfPoint> cdf;
  const double n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
    cdf.push_back({values[i], static_cast<double>(i + 1) / n});
  }
  return cdf;
}

std::vector<CdfPoint> secrecy_cdf(std::span<const SlotRecord> records) {
  std::vector<double> v;
  v.reserve(records.size());
  for (const auto& r : records) v.push_back(r.secrecy_realized);
  return empirical_cdf(std::move(v));
}

std::vector<CdfPoint> secrecy_cdf(std::span<const std::vector<SlotRecord>> runs) {
  std::vector<double> v;
  for (const auto& records : runs) {
    for (const auto& r : records) v.push_back(r.secrecy_realized);
  }
  return empirical_cdf(std::move(v));
}

}  // namespace isac
