#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nlrad/coefficient.hpp"
#include "nlrad/errors.hpp"

using namespace nlrad;

TEST_CASE("rational coefficient bounds and derivative") {
  const auto a = DiffusionCoefficient::rational(1.0, 1.0, 0.0, -0.5, 10.0);
  CHECK(a.lower_bound() == doctest::Approx(1.0 / 11.0));
  CHECK(a.upper_bound() == doctest::Approx(2.0));
  CHECK(a(0.0) == 1.0);
  CHECK(a(20.0) == doctest::Approx(1.0 / 11.0));
  CHECK(a(-3.0) == doctest::Approx(2.0));
  CHECK(a.derivative(1.0) == doctest::Approx(-0.25));
  CHECK(a.derivative(11.0) == 0.0);
  CHECK(sup_abs_derivative(a, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(DiffusionCoefficient::rational(1.0, 0.5, 0.0, -0.5, 1.0), InvalidArgument);
}

TEST_CASE("non-positive coefficients are rejected with a witness") {
  try {
    DiffusionCoefficient::piecewise_linear({{0.0, 1.0}, {1.0, -0.5}, {2.0, 1.0}});
    FAIL("expected CoefficientError");
  } catch (const CoefficientError& e) {
    CHECK(e.witness() >= 0.0);
    CHECK(e.witness() <= 2.0);
  }
  CHECK_THROWS_AS(DiffusionCoefficient::constant(0.0), CoefficientError);
}

TEST_CASE("tabulated interpolation is monotone between monotone samples") {
  const auto a = DiffusionCoefficient::tabulated({{0.0, 2.0}, {1.0, 1.5}, {2.0, 0.6}, {4.0, 0.5}});
  double prev = a(0.0);
  for (double s = 0.01; s <= 4.0; s += 0.01) {
    CHECK(a(s) <= prev + 1e-14);
    prev = a(s);
  }
  CHECK(a(1.0) == doctest::Approx(1.5));
  CHECK(a.lower_bound() == doctest::Approx(0.5));
}

TEST_CASE("scalar reduction root for a = 1/(1 + mu)") {
  const auto a = DiffusionCoefficient::rational(1.0, 1.0, 0.0, -0.5, 10.0);
  const double c = 4.0 * std::numbers::pi / 45.0;
  const auto roots = scalar_mu_roots(a, c);
  REQUIRE(roots.size() == 1);
  CHECK(roots[0].mu == doctest::Approx(c / (1.0 - c)).epsilon(1e-12));
  CHECK_FALSE(roots[0].tangential);
}

TEST_CASE("staircase recursion breakpoints") {
  // m1 = 2 c_max / a0, m2 = 2 m1, m3 = 2 c_max / a(m2) with a(m2) = c_min / m2.
  const Staircase st = staircase_builder(0.25, 0.5, 1.0, 3);
  REQUIRE(st.breakpoints.size() == 4);
  CHECK(st.breakpoints[0] == 0.0);
  CHECK(st.breakpoints[1] == doctest::Approx(1.0));
  CHECK(st.breakpoints[2] == doctest::Approx(2.0));
  CHECK(st.breakpoints[3] == doctest::Approx(8.0));
  REQUIRE(st.designed_intervals.size() == 2);
  for (const auto& [lo, hi] : st.designed_intervals) {
    CHECK(interval_condition_check(st.coefficient, lo, hi, 0.25, 0.5));
  }
  CHECK_THROWS_AS(staircase_builder(0.25, 0.5, 1.0, 4), InvalidArgument);
  CHECK_THROWS_AS(staircase_builder(0.5, 0.25, 1.0, 3), InvalidArgument);
}

TEST_CASE("staircase roots: one per designed interval for interior c") {
  const Staircase st = staircase_builder(0.25, 0.5, 1.0, 3);
  const auto roots = scalar_mu_roots(st.coefficient, 0.375);
  CHECK(roots.size() == 3);
  for (std::size_t k = 1; k < roots.size(); ++k) CHECK(roots[k - 1].mu < roots[k].mu);
  for (const auto& r : roots) CHECK(std::abs(r.residual) < 1e-10);
}

TEST_CASE("validate certifies the Lipschitz constant") {
  const auto a = DiffusionCoefficient::rational(1.0, 1.0, 0.0, -0.5, 10.0);
  const auto cert = validate(a, 0.5);
  CHECK(cert.m == doctest::Approx(1.0 / 11.0));
  CHECK(cert.lipschitz == doctest::Approx(4.0).epsilon(1e-4));
}
