#ifndef ISAC_SENSING_HPP
#define ISAC_SENSING_HPP

#include "isac/geometry.hpp"
#include "isac/rng.hpp"

namespace isac {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s

struct RangeMeasurement {
  int slot = 0;
  double value_m = 0.0;
};

/// Slant range from the UAV at horizontal position `uav` and altitude
/// `h_m` to a ground point `target`.
double true_distance(const Vec2& uav, double h_m, const Vec2& target);

/// Noisy range: d_true + N(0, sigma_d^2). Negative results are passed through.
double measure_range(double d_true, double sigma_d_m, Rng& rng);

/// One-way range for a round-trip echo delay.
constexpr double delay_to_range(double tau_s) { return kSpeedOfLight * tau_s / 2.0; }

}  // namespace isac

#endif  // ISAC_SENSING_HPP
