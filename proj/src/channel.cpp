#include "isac/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace isac {

double channel_gain(const Vec2& uav, double h_m, const Vec2& ground, double rho0) {
  return rho0 / (h_m * h_m + (uav - ground).squaredNorm());
}

double achievable_rate(double p0_w, double gain, double noise_w, double bandwidth_hz) {
  return bandwidth_hz * std::log1p(p0_w * gain / noise_w) / std::numbers::ln2;
}

SecrecyRate secrecy_rate(double r_bob_bps, double r_eve_bps) {
  const double raw = r_bob_bps - r_eve_bps;
  return {raw, std::max(raw, 0.0)};
}

double dbToLinear(double db) { return std::pow(10.0, db / 10.0); }

double dbmToWatts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

}  // namespace isac
