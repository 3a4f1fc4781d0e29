#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "nlrad/errors.hpp"
#include "nlrad/kernel.hpp"
#include "nlrad/montecarlo.hpp"

using namespace nlrad;

TEST_CASE("cap fraction limits") {
  for (int n = 1; n <= 3; ++n) {
    CHECK(cap_fraction(n, 0.3, 0.4, 0.0) == 0.0);
    CHECK(cap_fraction(n, 0.3, 0.4, 0.7) == 1.0);
    CHECK(cap_fraction(n, 0.3, 0.4, 0.1) == 0.0);
    CHECK(cap_fraction(n, 0.0, 0.0, 0.5) == 1.0);
    CHECK(cap_fraction(n, 0.0, 0.5, 0.5) == 1.0);
  }
  CHECK_THROWS_AS(cap_fraction(4, 0.3, 0.4, 0.5), InvalidArgument);
}

TEST_CASE("cap fraction closed forms inside the lens") {
  // n = 3: Archimedes' hat-box area ratio; n = 2: arc over the circle.
  CHECK(cap_fraction(3, 0.5, 0.5, 0.5) == doctest::Approx(0.25));
  CHECK(cap_fraction(2, 0.5, 0.5, 0.5) == doctest::Approx(1.0 / 3.0));
  CHECK(cap_fraction(1, 0.5, 0.5, 0.5) == 0.5);
  CHECK(cap_fraction(3, 1.0, 1.0, std::sqrt(2.0)) == doctest::Approx(0.5));
  CHECK(cap_fraction(2, 1.0, 1.0, std::sqrt(2.0)) == doctest::Approx(0.5));
}

TEST_CASE("cap fraction is nondecreasing in r and symmetric in (t, s)") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    const int n = 1 + k % 3;
    const double t = u(rng), s = u(rng), r1 = 2.0 * u(rng), r2 = 2.0 * u(rng);
    const double lo = std::min(r1, r2), hi = std::max(r1, r2);
    CHECK(cap_fraction(n, t, s, lo) <= cap_fraction(n, t, s, hi) + 1e-15);
    CHECK(cap_fraction(n, t, s, lo) == doctest::Approx(cap_fraction(n, s, t, lo)).epsilon(1e-14));
    const double c = cap_fraction(n, t, s, lo);
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
  }
}

TEST_CASE("Monte Carlo oracle reproduces from its seed") {
  const auto a = mc_cap_validation(3, 4, 20000, 99);
  const auto b = mc_cap_validation(3, 4, 20000, 99);
  REQUIRE(a.size() == 4);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].estimate == b[k].estimate);
    CHECK(a[k].t == b[k].t);
  }
  std::mt19937_64 rng(5);
  CHECK(std::abs(mc_cap_fraction(3, 0.5, 0.5, 0.5, 200000, rng) - 0.25) < 5e-3);
}

TEST_CASE("kernel endpoints") {
  const RadialGrid g(3, 1.0, 128);
  const RadialField w = RadialField::sample(g, [](double r) { return 1.0 + r; });
  const RadialField u = RadialField::sample(g, [](double r) { return 1.0 - r * r; }, true);
  CHECK(sup_norm(InteractionKernel(w, 0.0).apply(u)) == 0.0);
  const RadialField full = InteractionKernel(w, 2.0).apply(u);
  // int (1 + r)(1 - r^2) 4 pi r^2 dr = 4 pi * 13/60
  for (std::size_t i = 0; i < full.size(); ++i) {
    CHECK(full[i] == doctest::Approx(4.0 * std::numbers::pi * 13.0 / 60.0).epsilon(1e-7));
  }
  CHECK_THROWS_AS(InteractionKernel(w, 2.5), InvalidArgument);
}

TEST_CASE("kernel is monotone in r for nonnegative data") {
  const RadialGrid g(2, 1.0, 64);
  const RadialField w = RadialField::constant(g, 1.0);
  const RadialField u = RadialField::sample(g, [](double r) { return std::cos(r); });
  RadialField prev = InteractionKernel(w, 0.0).apply(u);
  for (double r = 0.1; r <= 2.0; r += 0.1) {
    const RadialField cur = InteractionKernel(w, r).apply(u);
    for (std::size_t i = 0; i < cur.size(); ++i) CHECK(cur[i] >= prev[i] - 1e-14);
    prev = cur;
  }
}

TEST_CASE("functional bound and kernel csv") {
  const RadialGrid g(3, 1.0, 16);
  const InteractionKernel K(RadialField::constant(g, 2.0), 1.0);
  const RadialField u = RadialField::sample(g, [](double r) { return 1.0 - r; }, true);
  const auto [lhs, rhs] = functional_bound_report(K, u);
  CHECK(lhs <= rhs);
  std::ostringstream out;
  write_kernel_csv(K, out);
  const std::string s = out.str();
  CHECK(s.rfind("i,j,value\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 1 + 17 * 17);
}

TEST_CASE("gradient ratio vanishes at the endpoints of r") {
  const RadialGrid g(3, 1.0, 64);
  const RadialField w = RadialField::constant(g, 1.0);
  const RadialField u = RadialField::sample(g, [](double r) { return 1.0 - r * r; }, true);
  CHECK(gradient_ratio_report(InteractionKernel(w, 0.0), u) == 0.0);
  CHECK(gradient_ratio_report(InteractionKernel(w, 2.0), u) < 1e-12);
  const double mid = gradient_ratio_report(InteractionKernel(w, 1.0), u);
  CHECK(mid > 0.0);
  CHECK(std::isfinite(mid));
}
