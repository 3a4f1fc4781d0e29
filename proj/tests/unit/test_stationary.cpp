#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nlrad/errors.hpp"
#include "nlrad/stationary.hpp"

using namespace nlrad;

namespace {

StationaryProblem problem(int n, const DiffusionCoefficient& a, double f, double r_fraction, int N = 128) {
  const RadialGrid g(n, 1.0, N);
  return make_stationary_problem(a, RadialField::constant(g, f), RadialField::constant(g, 1.0),
                                 r_fraction * g.diameter());
}

const DiffusionCoefficient kRational = DiffusionCoefficient::rational(1.0, 1.0, 0.0, -0.5, 10.0);

}  // namespace

TEST_CASE("frozen-coefficient solve is exact for the Poisson quadratic") {
  for (int n = 1; n <= 3; ++n) {
    const RadialGrid g(n, 1.0, 32);
    const RadialField u = solve_linear_radial(RadialField::constant(g, 2.0), RadialField::constant(g, 1.0));
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(u[i] == doctest::Approx((1.0 - g.node(i) * g.node(i)) / (4.0 * n)).epsilon(1e-13));
    }
    CHECK(u.dirichlet());
  }
}

TEST_CASE("linear problem: one Picard step and a tiny residual") {
  const auto p = problem(3, DiffusionCoefficient::constant(1.0), 1.0, 1.0);
  const auto s = fixed_point_solve(p, RadialField::zeros(p.grid, true));
  CHECK(s.iterations <= 2);
  CHECK(s.pde_residual < 1e-9);
  CHECK(sup_norm(s.u) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
}

TEST_CASE("scalar reduction at r = d") {
  const auto p = problem(3, kRational, 1.0, 1.0, 256);
  const double c = 4.0 * std::numbers::pi / 45.0;
  const double mu = c / (1.0 - c);
  const auto s = fixed_point_solve(p, RadialField::zeros(p.grid, true));
  for (std::size_t i = 0; i < s.lr_u.size(); ++i) CHECK(std::abs(s.lr_u[i] - mu) < 1e-8);
  CHECK(sup_norm(s.u) == doctest::Approx((1.0 + mu) / 6.0).epsilon(1e-8));
  // Frozen from this implementation.
  CHECK(s.iterations == 17);

  const auto pd = solve_P_d(p);
  REQUIRE(pd.size() == 1);
  CHECK(pd[0].mu == doctest::Approx(mu).epsilon(1e-10));
  CHECK(sup_distance(pd[0].solution.u, s.u) < 1e-8);
}

TEST_CASE("interval I at r = d is a single point") {
  const auto p = problem(3, kRational, 1.0, 1.0);
  const auto [lo, hi] = interval_I(p);
  CHECK(lo == doctest::Approx(4.0 * std::numbers::pi / 45.0).epsilon(1e-8));
  CHECK(hi == doctest::Approx(lo).epsilon(1e-12));
  const auto [lo0, hi0] = interval_I(with_radius(p, 0.0));
  CHECK(lo0 == 0.0);
  CHECK(hi0 == 0.0);
}

TEST_CASE("frozen-coefficient comparison: larger coefficient, smaller solution") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const RadialGrid g(1 + trial % 3, 1.0, 48);
    std::vector<double> A(g.size()), B(g.size()), f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      A[i] = 0.2 + u(rng);
      B[i] = A[i] + u(rng);
      f[i] = u(rng);
    }
    const RadialField ua = solve_linear_radial(RadialField(g, A), RadialField(g, f));
    const RadialField ub = solve_linear_radial(RadialField(g, B), RadialField(g, f));
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(ub[i] <= ua[i] + 1e-15);
    CHECK(min_value(ua) >= 0.0);
  }
}

TEST_CASE("solutions are ordered in r for a decreasing coefficient") {
  const auto p = problem(3, kRational, 1.0, 0.0);
  RadialField prev = fixed_point_solve(p, RadialField::zeros(p.grid, true)).u;
  for (double frac : {0.25, 0.5, 0.75, 1.0}) {
    const RadialField cur = fixed_point_solve(with_radius(p, frac * p.grid.diameter()), prev).u;
    CHECK(comparison_check(RadialField::zeros(p.grid, true), prev, cur).ok);
    prev = cur;
  }
}

TEST_CASE("non-convergence surfaces the iterate and the residual history") {
  const auto p = problem(3, kRational, 1.0, 1.0);
  FixedPointOptions o;
  o.max_iter = 2;
  try {
    fixed_point_solve(p, RadialField::zeros(p.grid, true), o);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.last_iterate().size() == p.grid.size());
    CHECK(e.residual_history().size() >= 2);
  }
}

TEST_CASE("negative data and out-of-range radii are rejected") {
  const RadialGrid g(3, 1.0, 16);
  const auto one = RadialField::constant(g, 1.0);
  CHECK_THROWS_AS(make_stationary_problem(kRational, RadialField::constant(g, -1.0), one, 1.0), InvalidArgument);
  CHECK_THROWS_AS(make_stationary_problem(kRational, one, RadialField::constant(g, -0.1), 1.0), InvalidArgument);
  CHECK_THROWS_AS(make_stationary_problem(kRational, one, one, 2.5), InvalidArgument);
  CHECK_THROWS_AS(solve_P_d(make_stationary_problem(kRational, one, one, 1.0)), InvalidArgument);
}

TEST_CASE("uniqueness quotient for the rational law") {
  const auto p = problem(3, kRational, 0.1, 1.0, 256);
  const double c1 = default_c1(p.grid);
  CHECK(c1 == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-4));
  const auto pd = solve_P_d(p);
  REQUIRE(pd.size() == 1);
  // Frozen from this implementation.
  CHECK(uniqueness_quotient(p, pd[0].mu, 0.01, c1) == doctest::Approx(0.14397010330141011).epsilon(1e-9));
}
