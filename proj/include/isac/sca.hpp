#ifndef ISAC_SCA_HPP
#define ISAC_SCA_HPP

#include <vector>

#include "isac/geometry.hpp"
#include "isac/scenario.hpp"

namespace isac::sca {

/// Everything the per-slot trajectory problem needs from the scenario.
struct LinkPhysics {
  double h_m = 50.0;
  double rho0 = 1e-6;
  double p0_w = 0.1;
  double noise_w = 1e-13;
  double eve_noise_w = 1e-13;
  double bandwidth_hz = 1e6;
  double alpha = 0.5;
  double vmax_mps = 50.0;
  double dt_s = 0.1;
  Region region;

  static LinkPhysics fromConfig(const ScenarioConfig& cfg);

  double bobSnrScale() const { return p0_w * rho0 / noise_w; }
  double eveSnrScale() const { return p0_w * rho0 / eve_noise_w; }
  double maxStep() const { return vmax_mps * dt_s; }
};

struct SubproblemInstance {
  Vec2 q_prev;  // UAV position in the previous slot
  Vec2 q_r;     // expansion point
  Vec2 b_hat;   // predicted Bob position
  Vec2 w;       // Eve position
  LinkPhysics physics;
};

enum class SolveStatus { kConverged, kIterationCap };

struct SubproblemSolution {
  Vec2 q_star;
  double s_star = 0.0;     // slack, m^2
  double objective = 0.0;  // surrogate objective at (q_star, s_star), bit/s
  int inner_iterations = 0;
  SolveStatus status = SolveStatus::kConverged;
};

struct InnerSolverOptions {
  double armijo = 1e-4;
  double shrink = 0.5;
  double initial_step = 1.0;  // fraction of the reachable radius
  double step_tol = 1e-7;     // fraction of the reachable radius
  int max_iterations = 500;
  int max_backtracks = 60;
};

/// Bob's rate B log2(1 + p0 rho0 / (sigma^2 (H^2 + |q - b_hat|^2))).
double bob_rate(const Vec2& q, const Vec2& b_hat, const LinkPhysics& phys);

/// Eve's rate as a function of the squared horizontal UAV-Eve distance.
double leakage_rate(double squared_distance, const LinkPhysics& phys);

/// Weighted objective alpha R_b - (1 - alpha) R_w with exact distances.
double true_objective(const Vec2& q, const Vec2& b_hat, const Vec2& w, const LinkPhysics& phys);

/// First-order lower bound on bob_rate in |q - b_hat|^2, expanded at q_r.
double rb_lower_bound(const Vec2& q, const SubproblemInstance& inst);

/// |q_r - w|^2 + 2 (q_r - w)^T (q - q_r); never exceeds |q - w|^2.
double linearized_standoff(const Vec2& q, const Vec2& q_r, const Vec2& w);

/// Lower limit applied to the slack inside the leakage term, -H^2 (1 - 1e-3).
double slack_floor(const LinkPhysics& phys);

/// Concave surrogate with the slack eliminated (s = linearized standoff,
/// floored at slack_floor).
double surrogate_objective(const Vec2& q, const SubproblemInstance& inst);

/// Euclidean projection onto {|p - center| <= radius} intersected with the
/// region. `center` must lie in the region.
Vec2 project_reachable(const Vec2& p, const Vec2& center, double radius, const Region& region);

/// Maximizes the surrogate over the reachable set by projected gradient
/// ascent started at the (projected) expansion point.
SubproblemSolution solve_subproblem(const SubproblemInstance& inst,
                                    const InnerSolverOptions& options = {});

struct ScaOptions {
  double eps_bps = 1.0;
  int max_iters = 20;
  InnerSolverOptions inner;
};

struct ScaIteration {
  int r = 0;
  Vec2 q;
  double surrogate_objective = 0.0;
  double true_objective = 0.0;
  int inner_iterations = 0;
};

struct ScaResult {
  Vec2 q;
  std::vector<ScaIteration> trace;
  bool degraded = false;  // some inner solve hit its iteration cap

  int iterations() const { return static_cast<int>(trace.size()); }
};

/// Successive convex approximation for one slot, starting from q_prev.
/// Stops when the true objective at successive iterates changes by at most
/// eps_bps, or after max_iters subproblems.
ScaResult sca_iterate(const Vec2& q_prev, const Vec2& b_hat, const Vec2& w,
                      const LinkPhysics& phys, const ScaOptions& options);

}  // namespace isac::sca

#endif  // ISAC_SCA_HPP
