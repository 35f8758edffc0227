#include "isac/sca.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

namespace isac::sca {

namespace {

constexpr double kInvLn2 = 1.0 / std::numbers::ln2;

// Surrogate of one subproblem with all expansion-point quantities cached.
class Surrogate {
 public:
  explicit Surrogate(const SubproblemInstance& inst)
      : b_hat_(inst.b_hat),
        q_r_(inst.q_r),
        u_(inst.q_r - inst.w),
        standoff_r_(u_.squaredNorm()),
        h2_(inst.physics.h_m * inst.physics.h_m),
        alpha_(inst.physics.alpha),
        bandwidth_(inst.physics.bandwidth_hz),
        eve_scale_(inst.physics.eveSnrScale()),
        floor_(slack_floor(inst.physics)) {
    const double bob_scale = inst.physics.bobSnrScale();
    d_r_ = (inst.q_r - inst.b_hat).squaredNorm();
    const double den = h2_ + d_r_;
    rate_r_ = bandwidth_ * std::log1p(bob_scale / den) * kInvLn2;
    slope_ = -bandwidth_ * kInvLn2 * bob_scale / (den * (den + bob_scale));
  }

  double bobBound(const Vec2& q) const {
    return rate_r_ + slope_ * ((q - b_hat_).squaredNorm() - d_r_);
  }

  double standoff(const Vec2& q) const { return standoff_r_ + 2.0 * u_.dot(q - q_r_); }

  bool inDomain(const Vec2& q) const { return standoff(q) >= floor_; }

  double value(const Vec2& q) const {
    const double s = std::max(standoff(q), floor_);
    const double leak = bandwidth_ * std::log1p(eve_scale_ / (h2_ + s)) * kInvLn2;
    return alpha_ * bobBound(q) - (1.0 - alpha_) * leak;
  }

  Vec2 gradient(const Vec2& q) const {
    Vec2 g = (q - b_hat_) * (2.0 * alpha_ * slope_);
    const double s = standoff(q);
    if (s > floor_) {
      const double den = h2_ + s;
      // d(leak)/ds < 0; the weighted term is subtracted.
      const double dleak = -bandwidth_ * kInvLn2 * eve_scale_ / (den * (den + eve_scale_));
      g += u_ * (-(1.0 - alpha_) * dleak * 2.0);
    }
    return g;
  }

  // Hessian of value() at q as (xx, xy, yy); negative semidefinite.
  std::array<double, 3> hessian(const Vec2& q) const {
    const double bob_curv = 2.0 * alpha_ * slope_;
    std::array<double, 3> h{bob_curv, 0.0, bob_curv};
    const double s = standoff(q);
    if (s > floor_) {
      const double den = h2_ + s;
      const double d2leak = bandwidth_ * kInvLn2 * eve_scale_ * (2.0 * den + eve_scale_) /
                            (den * den * (den + eve_scale_) * (den + eve_scale_));
      const double c = -(1.0 - alpha_) * d2leak * 4.0;
      h[0] += c * u_.x * u_.x;
      h[1] += c * u_.x * u_.y;
      h[2] += c * u_.y * u_.y;
    }
    return h;
  }

 private:
  Vec2 b_hat_;
  Vec2 q_r_;
  Vec2 u_;
  double standoff_r_;
  double h2_;
  double alpha_;
  double bandwidth_;
  double eve_scale_;
  double floor_;
  double d_r_ = 0.0;
  double rate_r_ = 0.0;
  double slope_ = 0.0;
};

Vec2 projectDisk(const Vec2& p, const Vec2& center, double radius) {
  const Vec2 d = p - center;
  const double n = d.norm();
  if (n <= radius) return p;
  return center + d * (radius / n);
}

// Maximizer of the quadratic model g.d + d'Hd/2 around q over the disk
// |q + d - center| <= radius, returned as an absolute point. Solved exactly
// in the eigenbasis of -H via the secular equation.
bool modelMaximizer(const Vec2& q, const Vec2& g, const std::array<double, 3>& h,
                    const Vec2& center, double radius, Vec2& out) {
  Eigen::Matrix2d a;
  a << -h[0], -h[1], -h[1], -h[2];
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(a);
  if (eig.info() != Eigen::Success) return false;
  const Eigen::Vector2d mu = eig.eigenvalues().cwiseMax(0.0);
  const Eigen::Matrix2d v = eig.eigenvectors();
  // In x = q + d - center the model is b'x - x'Ax/2 up to a constant.
  const Eigen::Vector2d x0(q.x - center.x, q.y - center.y);
  const Eigen::Vector2d b = Eigen::Vector2d(g.x, g.y) + a * x0;
  const Eigen::Vector2d bt = v.transpose() * b;
  auto normAt = [&](double lambda) {
    return std::hypot(bt[0] / (mu[0] + lambda), bt[1] / (mu[1] + lambda));
  };

  double lambda = 0.0;
  if (!(mu.minCoeff() > 0.0) || normAt(0.0) > radius) {
    double lo = 0.0;
    double hi = b.norm() / radius;
    if (!(hi > 0.0) || !std::isfinite(hi)) return false;
    for (int k = 0; k < 200 && hi - lo > 1e-15 * hi; ++k) {
      const double mid = 0.5 * (lo + hi);
      (normAt(mid) > radius ? lo : hi) = mid;
    }
    lambda = hi;
  }
  const Eigen::Vector2d xt(bt[0] / (mu[0] + lambda), bt[1] / (mu[1] + lambda));
  const Eigen::Vector2d x = v * xt;
  out = center + Vec2{x[0], x[1]};
  return out.isFinite();
}

}  // namespace

LinkPhysics LinkPhysics::fromConfig(const ScenarioConfig& cfg) {
  LinkPhysics p;
  p.h_m = cfg.h_m;
  p.rho0 = cfg.rho0;
  p.p0_w = cfg.p0_w;
  p.noise_w = cfg.noise_w;
  p.eve_noise_w = cfg.eve_noise_w;
  p.bandwidth_hz = cfg.bandwidth_hz;
  p.alpha = cfg.alpha;
  p.vmax_mps = cfg.vmax_mps;
  p.dt_s = cfg.dt_s;
  p.region = cfg.region;
  return p;
}

double bob_rate(const Vec2& q, const Vec2& b_hat, const LinkPhysics& phys) {
  const double den = phys.h_m * phys.h_m + (q - b_hat).squaredNorm();
  return phys.bandwidth_hz * std::log1p(phys.bobSnrScale() / den) * kInvLn2;
}

double leakage_rate(double squared_distance, const LinkPhysics& phys) {
  const double den = phys.h_m * phys.h_m + squared_distance;
  return phys.bandwidth_hz * std::log1p(phys.eveSnrScale() / den) * kInvLn2;
}

double true_objective(const Vec2& q, const Vec2& b_hat, const Vec2& w, const LinkPhysics& phys) {
  return phys.alpha * bob_rate(q, b_hat, phys) -
         (1.0 - phys.alpha) * leakage_rate((q - w).squaredNorm(), phys);
}

double rb_lower_bound(const Vec2& q, const SubproblemInstance& inst) {
  return Surrogate(inst).bobBound(q);
}

double linearized_standoff(const Vec2& q, const Vec2& q_r, const Vec2& w) {
  const Vec2 u = q_r - w;
  return u.squaredNorm() + 2.0 * u.dot(q - q_r);
}

double slack_floor(const LinkPhysics& phys) { return -phys.h_m * phys.h_m * (1.0 - 1e-3); }

double surrogate_objective(const Vec2& q, const SubproblemInstance& inst) {
  return Surrogate(inst).value(q);
}

namespace {

// Pulls a point that is outside the disk by round-off back inside. Moving
// toward the center keeps box feasibility because the center is in the box.
Vec2 insideDisk(Vec2 v, const Vec2& center, double radius) {
  for (double shrink = 1.0 - 1e-15; (v - center).squaredNorm() > radius * radius; shrink -= 1e-15) {
    v = center + (v - center) * shrink;
  }
  return v;
}

Vec2 projectReachable(const Vec2& p, const Vec2& center, double radius, const Region& region) {
  const double r2 = radius * radius;
  auto inDisk = [&](const Vec2& v) { return (v - center).squaredNorm() <= r2 * (1.0 + 1e-12); };

  if (region.contains(p) && inDisk(p)) return p;
  const Vec2 on_disk = projectDisk(p, center, radius);
  if (region.contains(on_disk)) return on_disk;
  const Vec2 on_box = region.clamp(p);
  if (inDisk(on_box)) return on_box;

  // Both sets active: the projection is one of the circle/edge crossings.
  Vec2 best = region.clamp(on_disk);  // always feasible since center is in the region
  double best_d2 = std::numeric_limits<double>::infinity();
  auto consider = [&](const Vec2& v) {
    if (!region.contains(v, 1e-9)) return;
    const Vec2 c = region.clamp(v);
    const double d2 = (c - p).squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = c;
    }
  };
  for (const double xe : {0.0, region.lx}) {
    const double dx = xe - center.x;
    const double rem = r2 - dx * dx;
    if (rem < 0.0) continue;
    const double dy = std::sqrt(rem);
    consider({xe, center.y + dy});
    consider({xe, center.y - dy});
  }
  for (const double ye : {0.0, region.ly}) {
    const double dy = ye - center.y;
    const double rem = r2 - dy * dy;
    if (rem < 0.0) continue;
    const double dx = std::sqrt(rem);
    consider({center.x + dx, ye});
    consider({center.x - dx, ye});
  }
  return best;
}

}  // namespace

Vec2 project_reachable(const Vec2& p, const Vec2& center, double radius, const Region& region) {
  return insideDisk(projectReachable(p, center, radius, region), center, radius);
}

SubproblemSolution solve_subproblem(const SubproblemInstance& inst,
                                    const InnerSolverOptions& options) {
  const Surrogate surrogate(inst);
  const double radius = inst.physics.maxStep();
  const Region& region = inst.physics.region;
  auto project = [&](const Vec2& p) { return project_reachable(p, inst.q_prev, radius, region); };

  SubproblemSolution sol;
  Vec2 q = project(inst.q_r);
  double f = surrogate.value(q);

  auto finish = [&](SolveStatus status, int iterations) {
    sol.q_star = q;
    sol.s_star = surrogate.standoff(q);
    sol.objective = f;
    sol.inner_iterations = iterations;
    sol.status = status;
    return sol;
  };

  if (radius <= 0.0) return finish(SolveStatus::kConverged, 0);

  for (int it = 1; it <= options.max_iterations; ++it) {
    const Vec2 g = surrogate.gradient(q);
    const double gnorm = g.norm();
    if (!(gnorm > 0.0)) return finish(SolveStatus::kConverged, it);

    auto improves = [&](const Vec2& c, double fc) {
      return fc > f && fc >= f + options.armijo * g.dot(c - q);
    };
    bool accepted = false;
    Vec2 cand;
    double f_cand = f;

    // The quadratic-model maximizer over the disk is tried first; on
    // ill-conditioned instances plain gradient steps zigzag into the cap.
    Vec2 model;
    if (modelMaximizer(q, g, surrogate.hessian(q), inst.q_prev, radius, model)) {
      cand = project(model);
      if ((cand - q).norm() > options.step_tol * radius && surrogate.inDomain(cand)) {
        f_cand = surrogate.value(cand);
        accepted = improves(cand, f_cand);
      }
    }
    if (accepted) {
      q = cand;
      f = f_cand;
      continue;
    }

    double t = options.initial_step * radius / gnorm;
    for (int k = 0; !accepted && k < options.max_backtracks; ++k, t *= options.shrink) {
      cand = project(q + g * t);
      if (!surrogate.inDomain(cand)) continue;
      f_cand = surrogate.value(cand);
      if (cand == q) break;
      // Flat steps are rejected: near the optimum the objective no longer
      // resolves position changes and Armijo alone would accept them forever.
      if (improves(cand, f_cand)) accepted = true;
    }
    // No ascent left at working precision.
    if (!accepted) return finish(SolveStatus::kConverged, it);

    const double step = (cand - q).norm();
    q = cand;
    f = f_cand;
    if (step <= options.step_tol * radius) return finish(SolveStatus::kConverged, it);
  }
  return finish(SolveStatus::kIterationCap, options.max_iterations);
}

ScaResult sca_iterate(const Vec2& q_prev, const Vec2& b_hat, const Vec2& w,
                      const LinkPhysics& phys, const ScaOptions& options) {
  ScaResult result;
  SubproblemInstance inst{q_prev, q_prev, b_hat, w, phys};
  double previous = true_objective(q_prev, b_hat, w, phys);
  result.q = q_prev;

  for (int r = 1; r <= options.max_iters; ++r) {
    const SubproblemSolution sol = solve_subproblem(inst, options.inner);
    if (sol.status != SolveStatus::kConverged) result.degraded = true;
    const double objective = true_objective(sol.q_star, b_hat, w, phys);
    result.q = sol.q_star;
    result.trace.push_back({r, sol.q_star, sol.objective, objective, sol.inner_iterations});
    // Successive iterates are compared on the true objective, which equals
    // the next surrogate at its expansion point.
    if (std::fabs(objective - previous) <= options.eps_bps) break;
    previous = objective;
    inst.q_r = sol.q_star;
  }
  return result;
}

}  // namespace isac::sca
