#include "nlrad/radial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nlrad/errors.hpp"

namespace nlrad {

namespace {

double power_or_one(double base, int exponent) {
  // 0^0 = 1 so that n = 1 carries a unit radial weight everywhere.
  return exponent == 0 ? 1.0 : std::pow(base, exponent);
}

std::vector<double> composite_weights(int cells, double h) {
  std::vector<double> w(static_cast<std::size_t>(cells) + 1, 0.0);
  int simpson_cells = cells % 2 == 0 ? cells : cells - 3;
  for (int k = 0; k < simpson_cells; k += 2) {
    w[k] += h / 3.0;
    w[k + 1] += 4.0 * h / 3.0;
    w[k + 2] += h / 3.0;
  }
  if (simpson_cells != cells) {
    const int k = simpson_cells;
    w[k] += 3.0 * h / 8.0;
    w[k + 1] += 9.0 * h / 8.0;
    w[k + 2] += 9.0 * h / 8.0;
    w[k + 3] += 3.0 * h / 8.0;
  }
  return w;
}

}  // namespace

RadialGrid::RadialGrid(int dim, double radius, int cells)
    : dim_(dim), radius_(radius), cells_(cells), h_(0.0), surface_(0.0) {
  if (dim < 1 || dim > 3) {
    throw InvalidArgument("unsupported dimension n = " + std::to_string(dim) +
                          " (supported: 1, 2, 3)");
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidArgument("grid radius must be positive and finite");
  }
  if (cells < 8) {
    throw InvalidArgument("grid too coarse: N = " + std::to_string(cells) + " < 8");
  }
  h_ = radius / cells;
  switch (dim) {
    case 1: surface_ = 2.0; break;
    case 2: surface_ = 2.0 * std::numbers::pi; break;
    default: surface_ = 4.0 * std::numbers::pi; break;
  }

  auto t = std::make_shared<Tables>();
  const std::size_t n_nodes = size();
  t->nodes.resize(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    t->nodes[i] = radius * static_cast<double>(i) / cells;
  }
  t->nodes.back() = radius;

  t->weights = composite_weights(cells, h_);
  t->radial_weight.resize(n_nodes);
  t->measure.resize(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    t->radial_weight[i] = power_or_one(t->nodes[i], dim - 1);
    t->measure[i] = surface_ * t->weights[i] * t->radial_weight[i];
  }

  t->face_area.resize(static_cast<std::size_t>(cells));
  for (int i = 0; i < cells; ++i) {
    t->face_area[i] = power_or_one((i + 0.5) * h_, dim - 1);
  }

  t->volumes.resize(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    const double lo = std::max(0.0, t->nodes[i] - 0.5 * h_);
    const double hi = std::min(radius, t->nodes[i] + 0.5 * h_);
    t->volumes[i] = (std::pow(hi, dim) - std::pow(lo, dim)) / dim;
  }
  tables_ = std::move(t);
}

RadialGrid build_grid(int dim, double radius, int cells) { return RadialGrid(dim, radius, cells); }

RadialField::RadialField(RadialGrid grid, std::vector<double> values, bool dirichlet)
    : grid_(std::move(grid)), values_(std::move(values)), dirichlet_(dirichlet) {
  if (values_.size() != grid_.size()) {
    throw InvalidArgument("field has " + std::to_string(values_.size()) +
                          " samples, grid expects " + std::to_string(grid_.size()));
  }
  if (dirichlet_ && values_.back() != 0.0) {
    throw InvalidArgument("Dirichlet field must vanish at rho = R");
  }
}

RadialField RadialField::zeros(const RadialGrid& grid, bool dirichlet) {
  return RadialField(grid, std::vector<double>(grid.size(), 0.0), dirichlet);
}

RadialField RadialField::constant(const RadialGrid& grid, double value) {
  return RadialField(grid, std::vector<double>(grid.size(), value));
}

RadialField RadialField::sample(const RadialGrid& grid, const std::function<double(double)>& fn,
                                bool dirichlet) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid.node(i));
  if (dirichlet) v.back() = 0.0;
  return RadialField(grid, std::move(v), dirichlet);
}

RadialField& RadialField::make_dirichlet() {
  values_.back() = 0.0;
  dirichlet_ = true;
  return *this;
}

RadialField& RadialField::operator+=(const RadialField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  dirichlet_ = dirichlet_ && other.dirichlet_;
  return *this;
}

RadialField& RadialField::operator-=(const RadialField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  dirichlet_ = dirichlet_ && other.dirichlet_;
  return *this;
}

RadialField& RadialField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

void require_same_grid(const RadialField& a, const RadialField& b) {
  if (!(a.grid() == b.grid())) throw InvalidArgument("fields live on different grids");
}

double integrate(const RadialField& u) {
  const auto mu = u.grid().measure();
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += mu[i] * u[i];
  return s;
}

double inner(const RadialField& u, const RadialField& v) {
  require_same_grid(u, v);
  const auto mu = u.grid().measure();
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += mu[i] * u[i] * v[i];
  return s;
}

double l2_norm(const RadialField& u) { return std::sqrt(std::max(0.0, inner(u, u))); }

double h1_seminorm(const RadialField& u) { return l2_norm(radial_derivative(u)); }

double sup_norm(const RadialField& u) {
  double s = 0.0;
  for (double v : u.values()) s = std::max(s, std::abs(v));
  return s;
}

double min_value(const RadialField& u) {
  return *std::min_element(u.values().begin(), u.values().end());
}

double max_value(const RadialField& u) {
  return *std::max_element(u.values().begin(), u.values().end());
}

double sup_distance(const RadialField& a, const RadialField& b) {
  require_same_grid(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
  return s;
}

RadialField radial_derivative(const RadialField& u) {
  const std::size_t n = u.size();
  const double h = u.grid().h();
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (u[i + 1] - u[i - 1]) / (2.0 * h);
  d[n - 1] = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * h);
  return RadialField(u.grid(), std::move(d));
}

void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs) {
  const std::size_t n = diag.size();
  std::vector<double> c(n, 0.0);
  double denom = diag[0];
  if (denom == 0.0) throw NumericalError("singular tridiagonal system");
  c[0] = n > 1 ? upper[0] / denom : 0.0;
  rhs[0] /= denom;
  for (std::size_t i = 1; i < n; ++i) {
    denom = diag[i] - lower[i] * c[i - 1];
    if (denom == 0.0 || !std::isfinite(denom)) throw NumericalError("singular tridiagonal system");
    c[i] = i + 1 < n ? upper[i] / denom : 0.0;
    rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
}

std::vector<double> face_coefficient(const RadialField& coefficient) {
  const std::size_t cells = coefficient.size() - 1;
  std::vector<double> a(cells);
  for (std::size_t i = 0; i < cells; ++i) a[i] = 0.5 * (coefficient[i] + coefficient[i + 1]);
  return a;
}

std::vector<double> apply_flux_operator(const RadialField& coefficient, const RadialField& u) {
  require_same_grid(coefficient, u);
  const auto& grid = u.grid();
  const auto area = grid.face_area();
  const auto a_face = face_coefficient(coefficient);
  const double h = grid.h();
  const std::size_t n = u.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    // Outward flux through the face between node i and i+1.
    const double flux = -a_face[i] * area[i] * (u[i + 1] - u[i]) / h;
    out[i] += flux;
    if (i + 1 < n - 1) out[i + 1] -= flux;
  }
  return out;
}

double principal_eigenvalue(const RadialGrid& grid) {
  const std::size_t n = grid.size() - 1;  // Dirichlet node dropped
  const auto area = grid.face_area();
  const auto vol = grid.volumes();
  const double h = grid.h();

  std::vector<double> lower(n, 0.0), diag(n, 0.0), upper(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = area[i] / h + (i > 0 ? area[i - 1] / h : 0.0);
    if (i > 0) lower[i] = -area[i - 1] / h;
    if (i + 1 < n) upper[i] = -area[i] / h;
  }
  auto stiffness = [&](const std::vector<double>& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double kx = diag[i] * x[i];
      if (i > 0) kx += lower[i] * x[i - 1];
      if (i + 1 < n) kx += upper[i] * x[i + 1];
      s += x[i] * kx;
    }
    return s;
  };
  auto mass = [&](const std::vector<double>& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += vol[i] * x[i] * x[i];
    return s;
  };

  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = grid.radius() - grid.node(i);
  double lambda = stiffness(x) / mass(x);
  for (int it = 0; it < 10000; ++it) {
    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = vol[i] * x[i];
    solve_tridiagonal(lower, diag, upper, rhs);
    const double norm = std::sqrt(mass(rhs));
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / norm;
    const double next = stiffness(x);
    if (std::abs(next - lambda) <= 1e-10 * std::abs(next)) return next;
    lambda = next;
  }
  throw NumericalError("principal eigenvalue: inverse iteration did not converge");
}

}  // namespace nlrad
