#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nlrad/coefficient.hpp"
#include "nlrad/kernel.hpp"
#include "nlrad/radial.hpp"

namespace nlrad {

/// Data of -div(a(l_r(u)) grad u) = f in the ball, u = 0 on the sphere.
struct StationaryProblem {
  RadialGrid grid;
  DiffusionCoefficient a;
  RadialField f;
  RadialField g;
  double r;
  InteractionKernel kernel;
};

/// Rejects negative samples of f or g and r outside [0, d].
StationaryProblem make_stationary_problem(const DiffusionCoefficient& a, const RadialField& f,
                                          const RadialField& g, double r);

/// Same data at another interaction radius.
StationaryProblem with_radius(const StationaryProblem& problem, double r);

struct StationarySolution {
  RadialField u;                  // Dirichlet
  RadialField lr_u;               // l_r(u)
  RadialField coefficient_field;  // a(l_r(u))
  double residual = 0.0;          // fixed-point sup-distance at termination
  double pde_residual = 0.0;
  int iterations = 0;
};

/// Evaluates l_r(u), a(l_r(u)) and the strong-form residual of a given u.
StationarySolution evaluate_solution(const StationaryProblem& problem, const RadialField& u,
                                     double residual = 0.0, int iterations = 0);

/// Solves -div(A grad u) = f with the radial coefficient A frozen.
///
/// Discrete form of u'(t) = -(1/A) t^{1-n} int_0^t s^{n-1} f: the flux through
/// each face balances the source mass of the cells inside it, and u is summed
/// inward from u(R) = 0.
RadialField solve_linear_radial(const RadialField& A, const RadialField& f);

/// Poisson solution phi: -Laplace phi = f.
RadialField poisson_phi(const StationaryProblem& problem);

/// Node-wise range [min l_r(phi), max l_r(phi)].
std::pair<double, double> interval_I(const StationaryProblem& problem);

/// Max over the non-Dirichlet nodes of |(K_A u)_i / V_i - f_i| with
/// A = a(l_r(u)): the control-volume form of the strong residual.
double pde_residual(const StationaryProblem& problem, const RadialField& u);

struct FixedPointOptions {
  double damping = 1.0;
  double tol = 1e-10;
  int max_iter = 500;
};

/// Damped Picard iteration on the coefficient. Throws ConvergenceError.
StationarySolution fixed_point_solve(const StationaryProblem& problem, const RadialField& seed,
                                     const FixedPointOptions& options = {});

struct PdSolution {
  double mu = 0.0;
  bool tangential = false;
  StationarySolution solution;
};

/// Every solution at r = d through the scalar reduction mu a(mu) = l_d(phi),
/// ascending in mu. Each is checked against the residual and the reduction.
std::vector<PdSolution> solve_P_d(const StationaryProblem& problem,
                                  std::optional<double> mu_max = std::nullopt,
                                  double residual_tol = 1e-8);

struct MultistartResult {
  struct Entry {
    std::pair<double, double> interval;
    StationarySolution solution;
    bool localized = false;
  };
  std::vector<Entry> solutions;
  std::vector<std::pair<std::pair<double, double>, std::string>> failures;
};

/// One Picard run per interval, seeded with the constant-coefficient solution
/// at a(midpoint); duplicates (sup-distance <= 10 tol) are dropped.
MultistartResult multistart_solve(const StationaryProblem& problem,
                                  const std::vector<std::pair<double, double>>& intervals,
                                  const FixedPointOptions& options = {});

struct ComparisonResult {
  bool ok = true;
  double worst = 0.0;        // most negative margin (0 when ok)
  std::size_t witness = 0;   // node of the worst margin
};

/// u_lo <= u <= u_hi node-wise up to 1e-6 (1 + sup_norm(u_hi)).
ComparisonResult comparison_check(const RadialField& u_lo, const RadialField& u,
                                  const RadialField& u_hi);

/// Q = C1 |g|_2 |f|_2 sup_{[-eps, mu_d + eps]} |a'| / a(mu_d)^2.
double uniqueness_quotient(const StationaryProblem& problem, double mu_d, double eps, double c1);

/// 1 / sqrt(lambda_1): the default for C1.
double default_c1(const RadialGrid& grid);

}  // namespace nlrad
