#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "nlrad/errors.hpp"
#include "nlrad/radial.hpp"

using namespace nlrad;

namespace {

double ball_volume(int n) {
  const double omega[] = {0.0, 2.0, 2.0 * std::numbers::pi, 4.0 * std::numbers::pi};
  return omega[n] / n;
}

}  // namespace

TEST_CASE("grid layout") {
  const RadialGrid g(3, 2.0, 64);
  CHECK(g.size() == 65);
  CHECK(g.h() == doctest::Approx(2.0 / 64));
  CHECK(g.node(0) == 0.0);
  CHECK(g.node(64) == doctest::Approx(2.0));
  CHECK(g.diameter() == 4.0);
  CHECK(g.surface_factor() == doctest::Approx(4.0 * std::numbers::pi));
  CHECK_THROWS_AS(RadialGrid(4, 1.0, 16), InvalidArgument);
  CHECK_THROWS_AS(RadialGrid(3, -1.0, 16), InvalidArgument);
}

TEST_CASE("quadrature integrates cubics exactly on even and odd cell counts") {
  for (int cells : {16, 17}) {
    const RadialGrid g(1, 1.0, cells);
    double sum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) sum += g.weights()[i] * std::pow(g.node(i), 3);
    CHECK(sum == doctest::Approx(0.25).epsilon(1e-14));
  }
}

TEST_CASE("ball volume from the measure") {
  for (int n = 1; n <= 3; ++n) {
    const RadialGrid g(n, 1.0, 128);
    CHECK(integrate(RadialField::constant(g, 1.0)) == doctest::Approx(ball_volume(n)).epsilon(1e-12));
  }
}

TEST_CASE("control volumes partition the radial measure") {
  for (int n = 1; n <= 3; ++n) {
    const RadialGrid g(n, 1.5, 40);
    double sum = 0.0;
    for (double v : g.volumes()) sum += v;
    CHECK(sum == doctest::Approx(std::pow(1.5, n) / n).epsilon(1e-13));
  }
}

TEST_CASE("norms of 1 - rho^2 on the unit ball, n = 3") {
  const RadialGrid g(3, 1.0, 256);
  const RadialField u = RadialField::sample(g, [](double r) { return 1.0 - r * r; }, true);
  // int (1 - r^2)^2 4 pi r^2 dr = 32 pi / 105
  CHECK(l2_norm(u) == doctest::Approx(std::sqrt(32.0 * std::numbers::pi / 105.0)).epsilon(1e-8));
  CHECK(sup_norm(u) == 1.0);
  CHECK(min_value(u) == 0.0);
  // int (2r)^2 4 pi r^2 dr = 16 pi / 5
  CHECK(h1_seminorm(u) == doctest::Approx(std::sqrt(16.0 * std::numbers::pi / 5.0)).epsilon(1e-4));
}

TEST_CASE("principal eigenvalue approaches the continuum value") {
  // j_{0,1}^2 (n = 2), pi^2 (n = 3), (pi / 2)^2 (n = 1)
  CHECK(principal_eigenvalue(RadialGrid(1, 1.0, 256)) == doctest::Approx(std::pow(std::numbers::pi / 2, 2)).epsilon(1e-4));
  CHECK(principal_eigenvalue(RadialGrid(2, 1.0, 256)) == doctest::Approx(5.783185962946784).epsilon(1e-4));
  CHECK(principal_eigenvalue(RadialGrid(3, 1.0, 256)) == doctest::Approx(std::numbers::pi * std::numbers::pi).epsilon(1e-4));
}

TEST_CASE("tridiagonal solve matches a dense solve") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 30;
  std::vector<double> lo(n), di(n), up(n), rhs(n);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    lo[i] = i > 0 ? u(rng) : 0.0;
    up[i] = i + 1 < n ? u(rng) : 0.0;
    di[i] = 3.0 + u(rng);
    rhs[i] = b(i) = u(rng);
    A(i, i) = di[i];
    if (i > 0) A(i, i - 1) = lo[i];
    if (i + 1 < n) A(i, i + 1) = up[i];
  }
  solve_tridiagonal(lo, di, up, rhs);
  const Eigen::VectorXd x = A.lu().solve(b);
  for (int i = 0; i < n; ++i) CHECK(rhs[i] == doctest::Approx(x(i)).epsilon(1e-12));
}

TEST_CASE("fields on different grids do not mix") {
  const RadialField a = RadialField::zeros(RadialGrid(3, 1.0, 16));
  const RadialField b = RadialField::zeros(RadialGrid(3, 1.0, 32));
  CHECK_THROWS_AS(a + b, InvalidArgument);
  CHECK_THROWS_AS(sup_distance(a, b), InvalidArgument);
}

TEST_CASE("make_dirichlet pins the boundary node") {
  const RadialGrid g(2, 1.0, 8);
  RadialField u = RadialField::constant(g, 3.0);
  u.make_dirichlet();
  CHECK(u.dirichlet());
  CHECK(u[8] == 0.0);
  CHECK(u[0] == 3.0);
}
