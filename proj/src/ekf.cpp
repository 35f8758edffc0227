#include "isac/ekf.hpp"

#include "isac/sensing.hpp"

namespace isac::ekf {

StateVector toVector(const TargetState& s) { return {s.x, s.vx, s.y, s.vy}; }

TargetState fromVector(const StateVector& v) { return {v(0), v(1), v(2), v(3)}; }

ProcessNoise ProcessNoise::fromSigmas(double sx, double svx, double sy, double svy) {
  ProcessNoise q;
  q.variances << sx * sx, svx * svx, sy * sy, svy * svy;
  return q;
}

TransitionMatrix transition_matrix(double dt_s) {
  TransitionMatrix phi = TransitionMatrix::Identity();
  phi(0, 1) = dt_s;
  phi(2, 3) = dt_s;
  return phi;
}

FilterState predict(const FilterState& fs, const TransitionMatrix& phi, const ProcessNoise& q) {
  FilterState out;
  out.estimate = fromVector(phi * toVector(fs.estimate));
  out.cov = phi * fs.cov * phi.transpose() + q.matrix();
  return out;
}

MeasurementRow range_jacobian(const TargetState& est, const Vec2& uav, double h_m) {
  const double d = true_distance(uav, h_m, est.position());
  return {(est.x - uav.x) / d, 0.0, (est.y - uav.y) / d, 0.0};
}

GainVector kalman_gain(const Covariance4& p_pred, const MeasurementRow& h_row, double sigma_d2) {
  const GainVector ph = p_pred * h_row.transpose();
  const double innovation_var = h_row.dot(ph) + sigma_d2;
  if (!(innovation_var > 0.0)) {
    throw DegenerateInnovation("innovation variance is not positive");
  }
  return ph / innovation_var;
}

FilterState update(const FilterState& fs_pred, const GainVector& k, const MeasurementRow& h_row,
                   double measured_range_m, double predicted_range_m) {
  FilterState out;
  out.estimate =
      fromVector(toVector(fs_pred.estimate) + k * (measured_range_m - predicted_range_m));
  const Covariance4 p = (Covariance4::Identity() - k * h_row) * fs_pred.cov;
  out.cov = 0.5 * (p + p.transpose());
  return out;
}

FilterState apply_feedback(const FilterState& fs, const Vec2& reported_position,
                           double pos_sigma_m, double vel_sigma_mps) {
  FilterState out;
  out.estimate = {reported_position.x, fs.estimate.vx, reported_position.y, fs.estimate.vy};
  const double pv = pos_sigma_m * pos_sigma_m;
  const double vv = vel_sigma_mps * vel_sigma_mps;
  out.cov = Eigen::Vector4d(pv, vv, pv, vv).asDiagonal();
  return out;
}

}  // namespace isac::ekf
