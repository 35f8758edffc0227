#include "isac/sensing.hpp"

#include <cmath>

namespace isac {

double true_distance(const Vec2& uav, double h_m, const Vec2& target) {
  return std::sqrt(h_m * h_m + (uav - target).squaredNorm());
}

double measure_range(double d_true, double sigma_d_m, Rng& rng) {
  return d_true + rng.normal(sigma_d_m);
}

}  // namespace isac
