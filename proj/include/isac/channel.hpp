#ifndef ISAC_CHANNEL_HPP
#define ISAC_CHANNEL_HPP

#include "isac/geometry.hpp"

namespace isac {

struct RatePair {
  double r_bob_bps = 0.0;
  double r_eve_bps = 0.0;
};

struct SecrecyRate {
  double raw_bps = 0.0;       // r_bob - r_eve, may be negative
  double realized_bps = 0.0;  // max(raw, 0): transmission is suspended otherwise
};

/// Free-space gain rho0 / (H^2 + |q - p|^2).
double channel_gain(const Vec2& uav, double h_m, const Vec2& ground, double rho0);

/// Shannon rate B * log2(1 + p0 * h / noise).
double achievable_rate(double p0_w, double gain, double noise_w, double bandwidth_hz);

SecrecyRate secrecy_rate(double r_bob_bps, double r_eve_bps);

double dbToLinear(double db);
double dbmToWatts(double dbm);

}  // namespace isac

#endif  // ISAC_CHANNEL_HPP
