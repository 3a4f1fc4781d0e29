#include "nlrad/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlrad/errors.hpp"

namespace nlrad {

namespace {

void require_nonnegative(const RadialField& field, const char* name) {
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (!(field[i] >= 0.0)) {
      throw InvalidArgument(std::string(name) + " must be nonnegative (f >= 0 a.e. in the ball); node " +
                            std::to_string(i) + " has " + std::to_string(field[i]));
    }
  }
}

RadialField coefficient_of(const StationaryProblem& problem, const RadialField& lr) {
  std::vector<double> A(lr.size());
  for (std::size_t i = 0; i < lr.size(); ++i) A[i] = problem.a.value(lr[i]);
  return RadialField(lr.grid(), std::move(A));
}

}  // namespace

StationaryProblem make_stationary_problem(const DiffusionCoefficient& a, const RadialField& f,
                                          const RadialField& g, double r) {
  require_same_grid(f, g);
  require_nonnegative(f, "source f");
  require_nonnegative(g, "weight g");
  return StationaryProblem{f.grid(), a, f, g, r, InteractionKernel(g, r)};
}

StationaryProblem with_radius(const StationaryProblem& problem, double r) {
  return StationaryProblem{problem.grid, problem.a, problem.f, problem.g, r,
                           InteractionKernel(problem.g, r)};
}

RadialField solve_linear_radial(const RadialField& A, const RadialField& f) {
  require_same_grid(A, f);
  const auto& grid = f.grid();
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (!(A[i] > 0.0) || !std::isfinite(A[i])) {
      throw InvalidArgument("frozen coefficient must be positive; node " + std::to_string(i));
    }
  }
  const auto vol = grid.volumes();
  const auto area = grid.face_area();
  const auto a_face = face_coefficient(A);
  const double h = grid.h();
  const std::size_t n = grid.size();

  // Source mass inside face i, then the face gradient that carries it out.
  std::vector<double> drop(n - 1);
  double mass = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    mass += f[i] * vol[i];
    drop[i] = h * mass / (a_face[i] * area[i]);
  }
  std::vector<double> u(n, 0.0);
  for (std::size_t i = n - 1; i-- > 0;) u[i] = u[i + 1] + drop[i];
  return RadialField(grid, std::move(u), true);
}

RadialField poisson_phi(const StationaryProblem& problem) {
  return solve_linear_radial(RadialField::constant(problem.grid, 1.0), problem.f);
}

std::pair<double, double> interval_I(const StationaryProblem& problem) {
  const RadialField l = problem.kernel.apply(poisson_phi(problem));
  return {min_value(l), max_value(l)};
}

double pde_residual(const StationaryProblem& problem, const RadialField& u) {
  const RadialField A = coefficient_of(problem, problem.kernel.apply(u));
  const auto Ku = apply_flux_operator(A, u);
  const auto vol = problem.grid.volumes();
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    worst = std::max(worst, std::abs(Ku[i] / vol[i] - problem.f[i]));
  }
  return worst;
}

StationarySolution evaluate_solution(const StationaryProblem& problem, const RadialField& u,
                                     double residual, int iterations) {
  RadialField lr = problem.kernel.apply(u);
  RadialField A = coefficient_of(problem, lr);
  const double pde = pde_residual(problem, u);
  return StationarySolution{u, std::move(lr), std::move(A), residual, pde, iterations};
}

StationarySolution fixed_point_solve(const StationaryProblem& problem, const RadialField& seed,
                                     const FixedPointOptions& options) {
  require_same_grid(seed, problem.f);
  if (seed[seed.size() - 1] != 0.0) throw InvalidArgument("seed must vanish at rho = R");
  if (!(options.tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (!(options.damping > 0.0 && options.damping <= 1.0)) {
    throw InvalidArgument("damping must lie in (0, 1]");
  }

  RadialField u = seed;
  u.make_dirichlet();
  double theta = options.damping;
  std::vector<double> history;
  int rises = 0;
  for (int k = 0; k <= options.max_iter; ++k) {
    RadialField next =
        solve_linear_radial(coefficient_of(problem, problem.kernel.apply(u)), problem.f);
    const double res = sup_distance(next, u);
    if (!std::isfinite(res)) break;
    if (res <= options.tol) return evaluate_solution(problem, next, res, k);
    if (!history.empty() && res > history.back()) {
      if (++rises >= 2) {
        theta *= 0.5;
        rises = 0;
      }
    } else {
      rises = 0;
    }
    history.push_back(res);
    if (k == options.max_iter) break;
    u *= 1.0 - theta;
    next *= theta;
    u += next;
    u.make_dirichlet();
  }
  throw ConvergenceError("fixed-point iteration did not converge in " +
                             std::to_string(options.max_iter) + " iterations",
                         u.data(), history);
}

std::vector<PdSolution> solve_P_d(const StationaryProblem& problem, std::optional<double> mu_max,
                                  double residual_tol) {
  const double d = problem.grid.diameter();
  if (std::abs(problem.r - d) > 1e-12 * d) throw InvalidArgument("solve_P_d requires r = d");
  const RadialField phi = poisson_phi(problem);
  const RadialField l_phi = problem.kernel.apply(phi);
  const double c = l_phi[0];
  const double scale = 1.0 + sup_norm(problem.f);

  std::vector<PdSolution> out;
  for (const MuRoot& root : scalar_mu_roots(problem.a, c, mu_max)) {
    RadialField u = phi * (1.0 / problem.a.value(root.mu));
    u.make_dirichlet();
    StationarySolution sol = evaluate_solution(problem, u);
    if (sol.pde_residual > residual_tol * scale) {
      throw PropertyViolation("r = d solution fails the residual check at mu = " +
                              std::to_string(root.mu));
    }
    const double gap = std::abs(sol.lr_u[0] - root.mu);
    if (gap > 1e-8 * (1.0 + root.mu)) {
      throw PropertyViolation("r = d solution misses the scalar reduction at mu = " +
                              std::to_string(root.mu));
    }
    out.push_back(PdSolution{root.mu, root.tangential, std::move(sol)});
  }
  return out;
}

MultistartResult multistart_solve(const StationaryProblem& problem,
                                  const std::vector<std::pair<double, double>>& intervals,
                                  const FixedPointOptions& options) {
  MultistartResult result;
  for (const auto& iv : intervals) {
    const double mid = 0.5 * (iv.first + iv.second);
    const RadialField seed =
        solve_linear_radial(RadialField::constant(problem.grid, problem.a.value(mid)), problem.f);
    try {
      StationarySolution sol = fixed_point_solve(problem, seed, options);
      const bool duplicate = std::any_of(
          result.solutions.begin(), result.solutions.end(), [&](const MultistartResult::Entry& e) {
            return sup_distance(e.solution.u, sol.u) <= 10.0 * options.tol;
          });
      if (duplicate) continue;
      const double slack = 1e-8 * (1.0 + std::abs(iv.second));
      const bool localized = min_value(sol.lr_u) >= iv.first - slack &&
                             max_value(sol.lr_u) <= iv.second + slack;
      result.solutions.push_back({iv, std::move(sol), localized});
    } catch (const ConvergenceError& e) {
      result.failures.emplace_back(iv, e.what());
    }
  }
  return result;
}

ComparisonResult comparison_check(const RadialField& u_lo, const RadialField& u,
                                  const RadialField& u_hi) {
  require_same_grid(u_lo, u);
  require_same_grid(u, u_hi);
  const double slack = 1e-6 * (1.0 + sup_norm(u_hi));
  ComparisonResult res;
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double margin = std::min(u[i] - u_lo[i], u_hi[i] - u[i]);
    if (margin < worst) {
      worst = margin;
      res.witness = i;
    }
  }
  res.ok = worst >= -slack;
  res.worst = std::min(worst, 0.0);
  return res;
}

double uniqueness_quotient(const StationaryProblem& problem, double mu_d, double eps, double c1) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  const double lip = sup_abs_derivative(problem.a, -eps, mu_d + eps);
  const double a_mu = problem.a.value(mu_d);
  return c1 * l2_norm(problem.g) * l2_norm(problem.f) * lip / (a_mu * a_mu);
}

double default_c1(const RadialGrid& grid) { return 1.0 / std::sqrt(principal_eigenvalue(grid)); }

}  // namespace nlrad
