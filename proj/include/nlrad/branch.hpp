#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nlrad/stability.hpp"
#include "nlrad/stationary.hpp"

namespace nlrad {

struct BranchPoint {
  double r = 0.0;
  StationarySolution solution;
  double lambda_min = 0.0;
  bool stable = false;
  double Q = 0.0;
  double lower_bound = 0.0;       // stability_lower_bound at this point
  double dist_to_previous = 0.0;  // sup-distance to the preceding point
};

struct Branch {
  std::vector<BranchPoint> points;  // r strictly decreasing from d
  double mu_d = 0.0;                // root selected at r = d
  bool truncated = false;
  std::string diagnostic;
};

struct BranchOptions {
  int r_steps = 64;
  FixedPointOptions fixed_point{};
  double eps = 0.01;
  std::optional<double> c1;  // default 1/sqrt(lambda_1)
  std::optional<double> mu_max;
  bool stability = true;
};

/// Solves at r = d, keeps the smallest solution, then walks r down to 0 on a
/// uniform grid, warm-starting each solve from the previous point.
Branch continue_branch(const StationaryProblem& problem, const BranchOptions& options = {});

/// Columns r, sup_norm, lr_center, lambda_min, Q, residual, iterations.
void write_branch_csv(const Branch& branch, std::ostream& out);

/// r -> u_r node-wise nondecreasing (up to slack) as r increases.
ComparisonResult branch_monotonicity(const Branch& branch, double slack);

}  // namespace nlrad
