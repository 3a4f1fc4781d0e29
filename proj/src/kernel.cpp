#include "nlrad/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "nlrad/csv.hpp"
#include "nlrad/errors.hpp"

namespace nlrad {

double cap_fraction(int dim, double t, double s, double r) {
  if (r <= 0.0) return 0.0;
  if (r >= t + s) return 1.0;
  if (r <= std::abs(t - s)) return 0.0;
  // Here |t - s| < r < t + s, so t > 0 and s > 0.
  switch (dim) {
    case 1:
      return 0.5;
    case 2: {
      const double c = std::clamp((t * t + s * s - r * r) / (2.0 * t * s), -1.0, 1.0);
      return std::acos(c) / std::numbers::pi;
    }
    case 3:
      return std::clamp((r * r - (t - s) * (t - s)) / (4.0 * t * s), 0.0, 1.0);
    default:
      throw InvalidArgument("cap_fraction: unsupported dimension");
  }
}

InteractionKernel::InteractionKernel(const RadialField& weight, double radius)
    : weight_(weight), radius_(radius) {
  const auto& grid = weight.grid();
  if (!(radius >= 0.0) || radius > grid.diameter() * (1.0 + 1e-14)) {
    throw InvalidArgument("interaction radius must lie in [0, d]");
  }
  radius_ = std::min(radius, grid.diameter());
  const auto n = static_cast<Eigen::Index>(grid.size());
  const auto mu = grid.measure();
  matrix_ = Eigen::MatrixXd::Zero(n, n);
  if (radius_ == 0.0) return;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double col = mu[j] * weight[j];
    if (col == 0.0) continue;
    for (Eigen::Index i = 0; i < n; ++i) {
      matrix_(i, j) = col * cap_fraction(grid.dim(), grid.node(i), grid.node(j), radius_);
    }
  }
}

InteractionKernel build_kernel(const RadialField& weight, double radius) {
  return InteractionKernel(weight, radius);
}

RadialField InteractionKernel::apply(const RadialField& u) const {
  require_same_grid(weight_, u);
  Eigen::Map<const Eigen::VectorXd> x(u.values().data(), static_cast<Eigen::Index>(u.size()));
  Eigen::VectorXd y = matrix_ * x;
  return RadialField(u.grid(), std::vector<double>(y.data(), y.data() + y.size()));
}

std::pair<double, double> functional_bound_report(const InteractionKernel& kernel,
                                                  const RadialField& u) {
  const double lhs = sup_norm(kernel.apply(u));
  const double rhs = l2_norm(kernel.weight()) * l2_norm(u);
  if (lhs > rhs * (1.0 + 1e-8)) {
    throw PropertyViolation("nonlocal functional exceeds its Cauchy-Schwarz bound");
  }
  return {lhs, rhs};
}

double gradient_ratio_report(const InteractionKernel& kernel, const RadialField& u) {
  const RadialField& g = kernel.weight();
  const double g_h1 = std::hypot(l2_norm(g), h1_seminorm(g));
  const double denom = g_h1 * h1_seminorm(u);
  if (!(denom > 0.0)) throw InvalidArgument("gradient ratio needs nonzero g and grad u");
  return h1_seminorm(kernel.apply(u)) / denom;
}

void write_kernel_csv(const InteractionKernel& kernel, std::ostream& out) {
  out << "i,j,value\n";
  const auto& m = kernel.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out << i << ',' << j << ',' << format_double(m(i, j)) << '\n';
    }
  }
}

}  // namespace nlrad
