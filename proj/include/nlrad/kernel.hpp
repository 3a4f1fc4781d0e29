#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <utility>

#include "nlrad/radial.hpp"

namespace nlrad {

/// Fraction of the sphere {|y| = s} in R^n lying in the closed ball B(x, r)
/// for any |x| = t.
double cap_fraction(int dim, double t, double s, double r);

/// Dense realization of u -> l_r(u), the integral of g*u over the part of
/// the ball within distance r of each node:
///
///   l_r(u)(rho_i) = omega * sum_j w_j cap(n, rho_i, rho_j, r) g_j u_j rho_j^{n-1}
///
/// Built once per (g, r); immutable afterwards.
class InteractionKernel {
 public:
  InteractionKernel(const RadialField& weight, double radius);

  const RadialGrid& grid() const noexcept { return weight_.grid(); }
  const RadialField& weight() const noexcept { return weight_; }
  double radius() const noexcept { return radius_; }
  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }

  RadialField apply(const RadialField& u) const;

  /// l_r of the j-th nodal basis vector, evaluated at every node.
  Eigen::VectorXd column(std::size_t j) const { return matrix_.col(static_cast<Eigen::Index>(j)); }

 private:
  RadialField weight_;
  double radius_;
  Eigen::MatrixXd matrix_;
};

InteractionKernel build_kernel(const RadialField& weight, double radius);

inline RadialField apply(const InteractionKernel& kernel, const RadialField& u) {
  return kernel.apply(u);
}

/// (max_i |l_r(u)(rho_i)|, |g|_2 |u|_2). Throws PropertyViolation if the
/// Cauchy-Schwarz bound lhs <= rhs (1 + 1e-8) fails.
std::pair<double, double> functional_bound_report(const InteractionKernel& kernel,
                                                  const RadialField& u);

/// Observed |grad l_r(u)|_2 / (|g|_{H^1} |grad u|_2). Report only.
double gradient_ratio_report(const InteractionKernel& kernel, const RadialField& u);

/// Writes the matrix row-major with header "i,j,value".
void write_kernel_csv(const InteractionKernel& kernel, std::ostream& out);

}  // namespace nlrad
