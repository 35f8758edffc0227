#include "isac/scenario.hpp"

#include <cmath>

namespace isac {

namespace {

void require(bool ok, const char* key, const char* what) {
  if (!ok) throw ConfigError(key, what);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

void ScenarioConfig::validate() const {
  require(n_slots >= 1, "n_slots", "must be >= 1");
  require(finite(dt_s) && dt_s > 0.0, "dt_s", "must be > 0");
  require(feedback_period >= 1, "feedback_period_slots", "must be >= 1");
  require(finite(h_m) && h_m > 0.0, "h_m", "must be > 0");
  require(finite(vmax_mps) && vmax_mps >= 0.0, "vmax_mps", "must be >= 0");
  require(finite(region.lx) && region.lx > 0.0, "lx_m", "must be > 0");
  require(finite(region.ly) && region.ly > 0.0, "ly_m", "must be > 0");
  require(finite(rho0) && rho0 > 0.0, "rho0", "must be > 0 (linear)");
  require(finite(p0_w) && p0_w > 0.0, "p0", "must be > 0 W");
  require(finite(noise_w) && noise_w > 0.0, "noise", "must be > 0 W");
  require(finite(eve_noise_w) && eve_noise_w > 0.0, "eve_noise", "must be > 0 W");
  require(finite(bandwidth_hz) && bandwidth_hz > 0.0, "bandwidth_hz", "must be > 0");
  require(finite(sigma_x_m) && sigma_x_m >= 0.0, "sigma_x_m", "must be >= 0");
  require(finite(sigma_y_m) && sigma_y_m >= 0.0, "sigma_y_m", "must be >= 0");
  require(finite(sigma_vx_mps) && sigma_vx_mps >= 0.0, "sigma_vx_mps", "must be >= 0");
  require(finite(sigma_vy_mps) && sigma_vy_mps >= 0.0, "sigma_vy_mps", "must be >= 0");
  require(finite(sigma_d_m) && sigma_d_m >= 0.0, "sigma_d_m", "must be >= 0");
  require(velocity_prior_mps.isFinite(), "velocity_prior_mps", "must be finite");
  require(finite(feedback_sigma_m) && feedback_sigma_m >= 0.0, "feedback_sigma_m", "must be >= 0");
  require(finite(feedback_vel_sigma_mps) && feedback_vel_sigma_mps >= 0.0,
          "feedback_vel_sigma_mps", "must be >= 0");
  require(alpha >= 0.0 && alpha <= 1.0, "alpha", "must lie in [0, 1]");
  require(!std::isnan(sca_eps_bps) && sca_eps_bps >= 0.0, "sca_eps_bps", "must be >= 0");
  require(sca_max_iters >= 1, "sca_max_iters", "must be >= 1");
  require(mc_runs >= 1, "mc_runs", "must be >= 1");
  require(finite(bob_init.x) && finite(bob_init.vx) && finite(bob_init.y) && finite(bob_init.vy),
          "bob_init", "must be finite");
  require(!eve_waypoints.empty(), "eve_waypoints", "must contain at least one waypoint");
  for (std::size_t i = 0; i < eve_waypoints.size(); ++i) {
    const auto& wp = eve_waypoints[i];
    require(finite(wp.t_s) && wp.position.isFinite(), "eve_waypoints", "must be finite");
    if (i > 0) {
      require(wp.t_s > eve_waypoints[i - 1].t_s, "eve_waypoints",
              "waypoint times must be strictly increasing");
    }
  }
  require(uav_init.isFinite() && region.contains(uav_init), "uav_init",
          "must lie inside [0, lx_m] x [0, ly_m]");
}

TargetState step_target(const TargetState& state, double dt_s, const TransitionNoise& noise) {
  return {state.x + state.vx * dt_s + noise[0], state.vx + noise[1],
          state.y + state.vy * dt_s + noise[2], state.vy + noise[3]};
}

Vec2 eve_position(int n, std::span<const Waypoint> waypoints, double dt_s) {
  if (waypoints.empty()) throw ConfigError("eve_waypoints", "must contain at least one waypoint");
  const double t = (n - 1) * dt_s;
  if (t <= waypoints.front().t_s) return waypoints.front().position;
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    const auto& a = waypoints[i - 1];
    const auto& b = waypoints[i];
    if (t <= b.t_s) {
      const double f = (t - a.t_s) / (b.t_s - a.t_s);
      return a.position + (b.position - a.position) * f;
    }
  }
  return waypoints.back().position;
}

}  // namespace isac
