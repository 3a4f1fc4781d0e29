#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nlrad/stationary.hpp"

namespace nlrad {

struct ParabolicProblem {
  StationaryProblem base;
  RadialField u0;  // Dirichlet
  double T = 0.0;
  double dt = 0.0;

  std::size_t steps() const;
};

/// dt defaults to 1e-3 R^2 / m.
ParabolicProblem make_parabolic_problem(const StationaryProblem& base, const RadialField& u0,
                                        double T, std::optional<double> dt = std::nullopt);

/// One backward-Euler step with the coefficient lagged at the current state:
///   (V/dt + K_A) u_next = V u / dt + V f,   A = a(l_r(u)).
RadialField step(const RadialField& state, const StationaryProblem& problem, double dt);

/// Dirichlet energy of the discrete operator: omega sum_faces area (du/h)^2 h.
double v_norm(const RadialField& u);

struct RunOptions {
  int stride = 100;
  /// (u_lo, u_hi): margins are recorded and u0 must start inside.
  std::optional<std::pair<RadialField, RadialField>> corridor;
  std::optional<RadialField> steady;
};

/// Per-step series (every step, including t = 0) and decimated snapshots.
struct Trajectory {
  double dt = 0.0;
  int stride = 1;
  std::vector<double> t, l2, h1, sup, lr_center, lr_min, lr_max;
  std::vector<double> energy_lhs, energy_rhs;
  std::vector<double> corridor_margin_lo, corridor_margin_hi, dist_to_steady;
  std::vector<double> snapshot_times;
  std::vector<RadialField> snapshots;
  std::optional<RadialField> final_state;
};

Trajectory run(const ParabolicProblem& problem, const RunOptions& options = {});

/// Columns t, l2, h1, sup, lr_center, energy_lhs, energy_rhs,
/// corridor_margin_lo, corridor_margin_hi, dist_to_steady.
void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out);

struct EnergyLedger {
  std::vector<double> lhs, rhs;
  double worst_excess = 0.0;  // max of lhs - allowed
  bool holds = true;
};

/// lhs_k = |u_k|^2 / 2 + (m/2) sum_{j<=k} dt |u_j|_V^2,
/// rhs_k = |u0|^2 / 2 + t_k |f|_2^2 / (2 m lambda_1).
/// Holds iff lhs <= rhs (1 + 1e-3) + 10 dt scale at every step.
EnergyLedger energy_ledger(const Trajectory& trajectory, const ParabolicProblem& problem);

struct CorridorReport {
  bool preconditions = true;  // a nonincreasing on the relevant range
  bool holds = true;
  double worst_margin = 0.0;
  double slack = 0.0;
};

/// Checks u_lo <= u(t) <= u_hi at every recorded step with slack
/// 1e-6 (1 + sup u_hi) + 5 (h^2 + dt) sup u_hi.
CorridorReport corridor_check(const Trajectory& trajectory, const ParabolicProblem& problem,
                              const RadialField& u_lo, const RadialField& u_hi);

/// Throws InvalidArgument unless u_lo <= u0 <= u_hi (slack 1e-6 (1 + sup u_hi)).
void require_in_corridor(const RadialField& u0, const RadialField& u_lo, const RadialField& u_hi);

struct ContractionReport {
  double gamma = 0.0;
  std::vector<double> t, weighted;  // W_k
  double worst_increase = 0.0;
  bool holds = true;
};

/// Runs both initial data in lock step and checks that
/// W_k = exp(-sum p_j dt) |u_1 - u_2|_2^2, p = (gamma |g|_2 |u_1|_V)^2 / m,
/// is nonincreasing up to 1e-3 W_0 + 10 dt W_0.
ContractionReport contraction_check(const ParabolicProblem& problem, const RadialField& u0_a,
                                    const RadialField& u0_b);

struct AbsorbingReport {
  double t0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0, rho0_sq = 0.0, kc = 1.0;
  double bound = 0.0;          // (a3/t0 + a2) exp(a1)
  double observed_sup = 0.0;   // sup over [t0, T] of |u|_V^2
  bool within_bound = true;
  bool asserted = false;       // bound comparison is binding
  bool bounded = true;         // late sup does not exceed earlier sup
};

AbsorbingReport absorbing_set_report(const ParabolicProblem& problem, const Trajectory& trajectory,
                                     double t0, std::optional<double> kc = std::nullopt,
                                     bool kc_certified = false);

struct LinfReport {
  double sup = 0.0;
  double early_max = 0.0;  // first three quarters
  double late_max = 0.0;   // last quarter
  bool plateau = true;
};

LinfReport linf_tracking(const Trajectory& trajectory);

struct SteadyReport {
  std::vector<double> t, distance;
  double initial = 0.0, final = 0.0;
  bool asserted = false;
  bool converged = true;
};

/// |u(t_k) - u_r|_2 series; asserted (final <= 1e-4 initial) only when
/// `certified` is set.
SteadyReport steady_convergence_report(const Trajectory& trajectory, const RadialField& u_r,
                                       bool certified);

struct MoserExponents {
  int n = 3;
  double p = 2.0, r_m = 1.0, q = 2.0;
  double sigma = 0.0, beta = 0.0, rho = 0.0, delta = 0.0, alpha = 0.0, theta = 0.0;
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;
  double lambda1_sum = 0.0, lambda2_sum = 0.0;
};

/// sigma(r) = p (n + 2) / (2 [r (2p - pn + n) + np]).
double moser_sigma(int n, double p, double r);

/// Requires n >= 3, 1 < p < n/(n-2), r_m >= 1.
MoserExponents moser_exponents(int n, double p, double r_m);

}  // namespace nlrad
