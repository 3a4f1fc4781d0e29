#pragma once

#include <Eigen/Dense>

#include "nlrad/coefficient.hpp"
#include "nlrad/kernel.hpp"
#include "nlrad/stationary.hpp"

namespace nlrad {

/// Discrete linearized form on hat functions, Dirichlet node removed.
///
/// Element e = [rho_k, rho_{k+1}] has measure omega (rho_{k+1}^n - rho_k^n)/n
/// and carries the mean of the nodal coefficient. The nonlocal part uses the
/// element average of a'(l_r(u)) (K phi_j) at the two end nodes.
struct StabilityForm {
  Eigen::MatrixXd S;   // diffusion part, symmetric
  Eigen::MatrixXd Nm;  // nonlocal coupling, not symmetric
  Eigen::MatrixXd H;   // the same stiffness with a = 1 (H^1 mass)
};

StabilityForm assemble_form(const StationarySolution& solution, const InteractionKernel& kernel,
                            const DiffusionCoefficient& a);

/// G(phi) evaluated element by element without the assembled matrices.
double evaluate_form(const StationarySolution& solution, const InteractionKernel& kernel,
                     const DiffusionCoefficient& a, const RadialField& phi);

struct StabilityCertificate {
  double lambda_min = 0.0;
  bool stable = false;
  double tol = 0.0;
  RadialField eigenvector;  // Dirichlet, v^T H v = 1
  std::size_t grid_size = 0;
  double r = 0.0;
  int iterations = 0;
};

/// Smallest eigenvalue of (S - sym(Nm)) v = lambda H v.
///
/// lambda_min is the largest shift s with M - sH Cholesky-factorable, found by
/// bisection to relative width 1e-14. The eigenvector comes from at most 200
/// inverse-iteration steps at the lower end of the bracket.
StabilityCertificate min_eigenvalue(const StabilityForm& form, const RadialGrid& grid,
                                    double tol_stab);

/// tol_stab = 1e-8 m.
StabilityCertificate certify(const StationaryProblem& problem, const StationarySolution& solution);

/// inf a(l_r(u)) - C1 |g|_2 sup_{[-eps, mu_ref + eps]} |a'| |f|_2 / inf a(l_r(u)).
double stability_lower_bound(const StationaryProblem& problem, const StationarySolution& solution,
                             double eps, double mu_ref, double c1);

}  // namespace nlrad
