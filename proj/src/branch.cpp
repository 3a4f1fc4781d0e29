#include "nlrad/branch.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

#include "nlrad/csv.hpp"
#include "nlrad/errors.hpp"

namespace nlrad {

Branch continue_branch(const StationaryProblem& problem, const BranchOptions& options) {
  if (options.r_steps < 1) throw InvalidArgument("branch needs at least one r-step");
  const double d = problem.grid.diameter();
  const double c1 = options.c1.value_or(default_c1(problem.grid));

  const StationaryProblem top = with_radius(problem, d);
  const auto roots = solve_P_d(top, options.mu_max);
  if (roots.empty()) throw NumericalError("no solution at r = d");
  const auto smallest = std::min_element(roots.begin(), roots.end(), [](const auto& l, const auto& r) {
    return sup_norm(l.solution.u) < sup_norm(r.solution.u);
  });

  Branch branch;
  branch.mu_d = smallest->mu;
  const double Q = uniqueness_quotient(top, branch.mu_d, options.eps, c1);

  auto attach = [&](const StationaryProblem& p, StationarySolution sol) {
    double lambda = 0.0;
    bool stable = false;
    if (options.stability) {
      const StabilityCertificate cert = certify(p, sol);
      lambda = cert.lambda_min;
      stable = cert.stable;
    }
    const double bound = stability_lower_bound(p, sol, options.eps, branch.mu_d, c1);
    const double dist =
        branch.points.empty() ? 0.0 : sup_distance(branch.points.back().solution.u, sol.u);
    branch.points.push_back(BranchPoint{p.r, std::move(sol), lambda, stable, Q, bound, dist});
  };

  attach(top, smallest->solution);
  for (int k = 1; k <= options.r_steps; ++k) {
    const double r = k == options.r_steps ? 0.0 : d * (1.0 - static_cast<double>(k) / options.r_steps);
    const StationaryProblem p = with_radius(problem, r);
    try {
      attach(p, fixed_point_solve(p, branch.points.back().solution.u, options.fixed_point));
    } catch (const ConvergenceError& e) {
      branch.truncated = true;
      branch.diagnostic = "no convergence at r = " + format_double(r) + ": " + e.what();
      break;
    }
  }
  return branch;
}

void write_branch_csv(const Branch& branch, std::ostream& out) {
  CsvWriter csv(out, {"r", "sup_norm", "lr_center", "lambda_min", "Q", "residual", "iterations"});
  for (const auto& p : branch.points) {
    csv.row({p.r, sup_norm(p.solution.u), p.solution.lr_u[0], p.lambda_min, p.Q,
             p.solution.pde_residual, static_cast<double>(p.solution.iterations)});
  }
}

ComparisonResult branch_monotonicity(const Branch& branch, double slack) {
  ComparisonResult res;
  double worst = std::numeric_limits<double>::infinity();
  // Points run from r = d downwards, so u must not increase along the list.
  for (std::size_t k = 1; k < branch.points.size(); ++k) {
    const auto& prev = branch.points[k - 1].solution.u;
    const auto& cur = branch.points[k].solution.u;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      const double margin = prev[i] - cur[i];
      if (margin < worst) {
        worst = margin;
        res.witness = i;
      }
    }
  }
  res.ok = branch.points.size() < 2 || worst >= -slack;
  res.worst = branch.points.size() < 2 ? 0.0 : std::min(worst, 0.0);
  return res;
}

}  // namespace nlrad
