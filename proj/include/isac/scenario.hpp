#ifndef ISAC_SCENARIO_HPP
#define ISAC_SCENARIO_HPP

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "isac/geometry.hpp"

namespace isac {

/// Kinematic state of the tracked user, ordered [x, vx, y, vy].
struct TargetState {
  double x = 0.0;
  double vx = 0.0;
  double y = 0.0;
  double vy = 0.0;

  Vec2 position() const { return {x, y}; }
  Vec2 velocity() const { return {vx, vy}; }
  bool operator==(const TargetState&) const = default;
};

/// Per-slot transition noise [w_x, w_vx, w_y, w_vy].
using TransitionNoise = std::array<double, 4>;

/// Eve passes through `position` at time `t_s` (seconds from slot 1).
struct Waypoint {
  double t_s = 0.0;
  Vec2 position;
  bool operator==(const Waypoint&) const = default;
};

/// Invalid configuration value. `key()` names the offending config key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct ScenarioConfig {
  // Schedule.
  int n_slots = 100;
  double dt_s = 0.1;
  int feedback_period = 10;

  // Geometry and platform.
  double h_m = 50.0;
  double vmax_mps = 50.0;
  Region region{1000.0, 1000.0};

  // Link budget, linear scale.
  double rho0 = 1e-6;          // -60 dB
  double p0_w = 0.1;           // 20 dBm
  double noise_w = 1e-13;      // -100 dBm at Bob
  double eve_noise_w = 1e-13;  // -100 dBm at Eve
  double bandwidth_hz = 1e6;

  // Transition and ranging noise standard deviations.
  double sigma_x_m = 1.0;
  double sigma_y_m = 1.0;
  double sigma_vx_mps = 0.5;
  double sigma_vy_mps = 0.5;
  double sigma_d_m = 2.0;

  // Filter re-initialization at feedback events.
  Vec2 velocity_prior_mps{0.0, 0.0};
  double feedback_sigma_m = 0.1;
  double feedback_vel_sigma_mps = 2.0;

  // Trajectory optimizer.
  double alpha = 0.5;
  double sca_eps_bps = 1.0;
  int sca_max_iters = 20;
  bool sca_trace = false;  // keep per-iteration SCA objectives in the output

  std::uint64_t rng_seed = 1;
  int mc_runs = 100;

  TargetState bob_init{350.0, 10.0, 470.0, 10.0};
  std::vector<Waypoint> eve_waypoints{{0.0, {450.0, 470.0}}, {50.0, {950.0, 470.0}}};
  Vec2 uav_init{400.0, 470.0};

  double duration_s() const { return n_slots * dt_s; }
  double max_step_m() const { return vmax_mps * dt_s; }

  /// Throws ConfigError naming the first violated key.
  void validate() const;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Constant-velocity advance of one slot with additive noise.
TargetState step_target(const TargetState& state, double dt_s, const TransitionNoise& noise);

/// Eve's position at slot n (1-based): piecewise-linear in time t = (n-1)*dt,
/// held constant outside the waypoint time span.
Vec2 eve_position(int n, std::span<const Waypoint> waypoints, double dt_s);

}  // namespace isac

#endif  // ISAC_SCENARIO_HPP
