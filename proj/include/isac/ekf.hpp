#ifndef ISAC_EKF_HPP
#define ISAC_EKF_HPP

#include <Eigen/Dense>
#include <stdexcept>

#include "isac/geometry.hpp"
#include "isac/scenario.hpp"

namespace isac::ekf {

using StateVector = Eigen::Vector4d;
using Covariance4 = Eigen::Matrix4d;
using TransitionMatrix = Eigen::Matrix4d;
using MeasurementRow = Eigen::RowVector4d;
using GainVector = Eigen::Vector4d;

/// Innovation variance is not strictly positive.
class DegenerateInnovation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

StateVector toVector(const TargetState& s);
TargetState fromVector(const StateVector& v);

struct FilterState {
  TargetState estimate;
  Covariance4 cov = Covariance4::Zero();
};

/// diag(sigma_x^2, sigma_vx^2, sigma_y^2, sigma_vy^2)
struct ProcessNoise {
  Eigen::Vector4d variances = Eigen::Vector4d::Zero();

  static ProcessNoise fromSigmas(double sx, double svx, double sy, double svy);
  Covariance4 matrix() const { return variances.asDiagonal(); }
};

TransitionMatrix transition_matrix(double dt_s);

FilterState predict(const FilterState& fs, const TransitionMatrix& phi, const ProcessNoise& q);

/// Gradient of the slant range to `uav` with respect to [x, vx, y, vy],
/// evaluated at `est`. Zero when the UAV is directly overhead.
MeasurementRow range_jacobian(const TargetState& est, const Vec2& uav, double h_m);

/// P H^T / (H P H^T + sigma_d^2). Throws DegenerateInnovation if the
/// denominator is not positive.
GainVector kalman_gain(const Covariance4& p_pred, const MeasurementRow& h_row, double sigma_d2);

/// Measurement update; the returned covariance is symmetrized.
FilterState update(const FilterState& fs_pred, const GainVector& k, const MeasurementRow& h_row,
                   double measured_range_m, double predicted_range_m);

/// Re-initialization from an uplink location report: position is replaced,
/// velocity estimate kept, covariance reset to
/// diag(pos_sigma^2, vel_sigma^2, pos_sigma^2, vel_sigma^2).
FilterState apply_feedback(const FilterState& fs, const Vec2& reported_position,
                           double pos_sigma_m, double vel_sigma_mps);

}  // namespace isac::ekf

#endif  // ISAC_EKF_HPP
