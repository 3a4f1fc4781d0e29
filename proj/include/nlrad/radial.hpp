#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace nlrad {

/// Uniform discretization of [0, R] for radial functions on the ball of
/// radius R in dimension n.
///
/// Copies are cheap: node-derived tables live in shared immutable storage.
/// Quadrature weights are composite Simpson (with a 3/8 tail when N is
/// odd); the radial measure rho^{n-1} is kept out of the weights so the same
/// table serves every integrand. Control volumes [rho_{i-1/2}, rho_{i+1/2}]
/// carry the conservative second-order operator used by the stationary and
/// parabolic solvers.
class RadialGrid {
 public:
  RadialGrid(int dim, double radius, int cells);

  int dim() const noexcept { return dim_; }
  double radius() const noexcept { return radius_; }
  double diameter() const noexcept { return 2.0 * radius_; }
  int cells() const noexcept { return cells_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(cells_) + 1; }
  double h() const noexcept { return h_; }

  /// Measure of the unit sphere S^{n-1}: 2, 2*pi, 4*pi.
  double surface_factor() const noexcept { return surface_; }

  double node(std::size_t i) const noexcept { return tables_->nodes[i]; }
  std::span<const double> nodes() const noexcept { return tables_->nodes; }

  /// Composite quadrature weights w_i on [0, R] (no radial measure).
  std::span<const double> weights() const noexcept { return tables_->weights; }

  /// omega * w_i * rho_i^{n-1}: integrates a sampled radial function over the ball.
  std::span<const double> measure() const noexcept { return tables_->measure; }

  /// rho_{i+1/2}^{n-1} for i = 0..N-1.
  std::span<const double> face_area() const noexcept { return tables_->face_area; }

  /// Control volume measure int rho^{n-1} d rho over cell i, i = 0..N
  /// (the last cell is truncated at R).
  std::span<const double> volumes() const noexcept { return tables_->volumes; }

  /// rho_i^{n-1} with the 0^0 = 1 convention for n = 1.
  double radial_weight(std::size_t i) const noexcept { return tables_->radial_weight[i]; }

  friend bool operator==(const RadialGrid& a, const RadialGrid& b) noexcept {
    return a.dim_ == b.dim_ && a.radius_ == b.radius_ && a.cells_ == b.cells_;
  }

 private:
  struct Tables {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> measure;
    std::vector<double> face_area;
    std::vector<double> volumes;
    std::vector<double> radial_weight;
  };

  int dim_;
  double radius_;
  int cells_;
  double h_;
  double surface_;
  std::shared_ptr<const Tables> tables_;
};

RadialGrid build_grid(int dim, double radius, int cells);

/// Grid-aligned samples of a radial function.
class RadialField {
 public:
  RadialField(RadialGrid grid, std::vector<double> values, bool dirichlet = false);

  static RadialField zeros(const RadialGrid& grid, bool dirichlet = false);
  static RadialField constant(const RadialGrid& grid, double value);
  static RadialField sample(const RadialGrid& grid, const std::function<double(double)>& fn,
                            bool dirichlet = false);

  const RadialGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool dirichlet() const noexcept { return dirichlet_; }

  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double& operator[](std::size_t i) noexcept { return values_[i]; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  const std::vector<double>& data() const noexcept { return values_; }

  /// Pins the boundary value to zero and tags the field.
  RadialField& make_dirichlet();

  RadialField& operator+=(const RadialField& other);
  RadialField& operator-=(const RadialField& other);
  RadialField& operator*=(double s);

  friend RadialField operator+(RadialField a, const RadialField& b) { return a += b; }
  friend RadialField operator-(RadialField a, const RadialField& b) { return a -= b; }
  friend RadialField operator*(double s, RadialField a) { return a *= s; }
  friend RadialField operator*(RadialField a, double s) { return a *= s; }

 private:
  RadialGrid grid_;
  std::vector<double> values_;
  bool dirichlet_;
};

/// Throws InvalidArgument when the two fields live on different grids.
void require_same_grid(const RadialField& a, const RadialField& b);

/// Integral over the ball of the radial extension.
double integrate(const RadialField& u);
double inner(const RadialField& u, const RadialField& v);

double l2_norm(const RadialField& u);
double h1_seminorm(const RadialField& u);
double sup_norm(const RadialField& u);
double min_value(const RadialField& u);
double max_value(const RadialField& u);
double sup_distance(const RadialField& a, const RadialField& b);

/// Central differences inside, second-order one-sided at R, 0 at the centre.
RadialField radial_derivative(const RadialField& u);

/// Smallest eigenvalue of the discrete radial Dirichlet Laplacian.
double principal_eigenvalue(const RadialGrid& grid);

/// Coefficient on cell faces rho_{i+1/2}: arithmetic mean of nodal values.
std::vector<double> face_coefficient(const RadialField& coefficient);

/// Conservative operator K_A u = -(flux differences), without division by the
/// control volume; row N is left at zero (Dirichlet node).
std::vector<double> apply_flux_operator(const RadialField& coefficient, const RadialField& u);

/// Solves a tridiagonal system in place (Thomas algorithm). `lower[i]` couples
/// row i to i-1, `upper[i]` couples row i to i+1.
void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs);

}  // namespace nlrad
