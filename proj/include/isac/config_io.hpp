#ifndef ISAC_CONFIG_IO_HPP
#define ISAC_CONFIG_IO_HPP

#include <filesystem>
#include <set>
#include <string>
#include <string_view>

#include "isac/scenario.hpp"

namespace isac::io {

/// Version string written to run manifests.
inline constexpr std::string_view kCodeVersion = "1.0.0";

struct LoadedConfig {
  ScenarioConfig config;
  std::set<std::string> keys;  // keys present in the source text
};

// Config files are flat `key = value` lines; `#` starts a comment. Values are
// JSON literals (numbers, booleans, arrays). Unit-carrying key names:
//
//   n_slots, dt_s, feedback_period_slots, h_m, vmax_mps, lx_m, ly_m,
//   rho0_db | rho0_lin, p0_dbm | p0_w, noise_dbm | noise_w,
//   eve_noise_dbm | eve_noise_w, bandwidth_hz,
//   sigma_x_m, sigma_y_m, sigma_vx_mps, sigma_vy_mps, sigma_d_m,
//   velocity_prior_mps = [vx, vy], feedback_sigma_m, feedback_vel_sigma_mps,
//   alpha, sca_eps_bps, sca_max_iters, sca_trace, rng_seed, mc_runs,
//   bob_init = [x, vx, y, vy], eve_waypoints = [[t_s, x, y], ...],
//   uav_init = [x, y], code_version
//
// dB/dBm keys are converted to linear units on load. When uav_init is absent
// it defaults to the midpoint between Bob's and Eve's initial positions.
LoadedConfig parse_config(std::string_view text);
LoadedConfig load_config_file(const std::filesystem::path& path);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Serializes with linear-scale keys and shortest round-trip decimals, so
/// parse_config(serialize_config(c)).config == c.
std::string serialize_config(const ScenarioConfig& cfg);

}  // namespace isac::io

#endif  // ISAC_CONFIG_IO_HPP
