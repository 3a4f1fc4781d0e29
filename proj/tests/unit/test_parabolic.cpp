#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "nlrad/errors.hpp"
#include "nlrad/parabolic.hpp"

using namespace nlrad;

namespace {

const DiffusionCoefficient kRational = DiffusionCoefficient::rational(1.0, 1.0, 0.0, -0.5, 10.0);

StationaryProblem base(const DiffusionCoefficient& a, double f, int N = 64) {
  const RadialGrid g(3, 1.0, N);
  return make_stationary_problem(a, RadialField::constant(g, f), RadialField::constant(g, 1.0), 1.0);
}

}  // namespace

TEST_CASE("default time step and step count") {
  const auto p = base(kRational, 1.0);
  const auto pp = make_parabolic_problem(p, RadialField::zeros(p.grid, true), 0.5);
  CHECK(pp.dt == doctest::Approx(1e-3 * 11.0));
  CHECK(pp.steps() == 45);
  CHECK_THROWS_AS(make_parabolic_problem(p, RadialField::zeros(p.grid, true), -1.0), InvalidArgument);
}

TEST_CASE("stationary solutions are fixed points of the step") {
  const auto p = base(kRational, 1.0);
  const auto s = fixed_point_solve(p, RadialField::zeros(p.grid, true));
  CHECK(sup_distance(step(s.u, p, 0.01), s.u) < 1e-9);
}

TEST_CASE("heat decay, energy ledger and max principle") {
  const auto p = base(DiffusionCoefficient::constant(1.0), 0.0);
  const auto u0 = RadialField::sample(p.grid, [](double r) { return 1.0 - r * r; }, true);
  const auto pp = make_parabolic_problem(p, u0, 0.2, 1e-3);
  const Trajectory tr = run(pp);
  CHECK(tr.t.size() == pp.steps() + 1);
  for (std::size_t k = 1; k < tr.l2.size(); ++k) {
    CHECK(tr.l2[k] < tr.l2[k - 1]);
    CHECK(tr.sup[k] <= tr.sup[k - 1] + 1e-15);
  }
  CHECK(energy_ledger(tr, pp).holds);
  CHECK(tr.snapshots.size() == 3);
}

TEST_CASE("trajectory csv schema") {
  const auto p = base(kRational, 1.0, 16);
  const auto pp = make_parabolic_problem(p, RadialField::zeros(p.grid, true), 0.05, 0.01);
  std::ostringstream out;
  write_trajectory_csv(run(pp), out);
  const std::string s = out.str();
  CHECK(s.rfind("t,l2,h1,sup,lr_center,energy_lhs,energy_rhs,corridor_margin_lo,corridor_margin_hi,dist_to_steady\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 7);
}

TEST_CASE("corridor between the r = 0 and r = d solutions") {
  const auto p = base(kRational, 1.0);
  const auto lo = fixed_point_solve(with_radius(p, 0.0), RadialField::zeros(p.grid, true)).u;
  const auto hi = solve_P_d(with_radius(p, 2.0)).front().solution.u;
  RadialField mid = 0.5 * (lo + hi);
  mid.make_dirichlet();
  const auto pp = make_parabolic_problem(p, mid, 0.5, 0.005);
  RunOptions ro;
  ro.corridor = std::make_pair(lo, hi);
  const Trajectory tr = run(pp, ro);
  const auto rep = corridor_check(tr, pp, lo, hi);
  CHECK(rep.preconditions);
  CHECK(rep.holds);
  CHECK_THROWS_AS(require_in_corridor(RadialField::zeros(p.grid, true), lo, hi), InvalidArgument);
}

TEST_CASE("contraction: gamma vanishes for constant a") {
  const auto p = base(DiffusionCoefficient::constant(1.0), 1.0);
  const auto bump = RadialField::sample(p.grid, [](double r) { return 1.0 - r * r; }, true);
  const auto rep = contraction_check(make_parabolic_problem(p, bump, 0.2, 0.01), bump,
                                     RadialField::zeros(p.grid, true));
  CHECK(rep.gamma == 0.0);
  CHECK(rep.holds);
  for (std::size_t k = 1; k < rep.weighted.size(); ++k) CHECK(rep.weighted[k] <= rep.weighted[k - 1] * (1 + 1e-12));
}

TEST_CASE("steady-state report") {
  const auto p = base(kRational, 0.1);
  const auto s = fixed_point_solve(p, RadialField::zeros(p.grid, true));
  const auto pp = make_parabolic_problem(p, RadialField::zeros(p.grid, true), 20.0, 0.05);
  RunOptions ro;
  ro.steady = s.u;
  const auto rep = steady_convergence_report(run(pp, ro), s.u, true);
  CHECK(rep.asserted);
  CHECK(rep.converged);
  CHECK(rep.final < rep.initial);
}

TEST_CASE("Moser exponents at (n, p, r) = (3, 2, 1)") {
  const MoserExponents e = moser_exponents(3, 2.0, 1.0);
  CHECK(e.sigma == doctest::Approx(5.0 / 7.0));
  CHECK(e.beta == doctest::Approx(0.4));
  CHECK(e.delta == doctest::Approx(0.7));
  CHECK(e.rho == doctest::Approx(2.0 / 7.0));
  CHECK(e.theta == doctest::Approx(7.0 / 8.0));
  CHECK(e.q == doctest::Approx(2.0));
  CHECK_THROWS_AS(moser_exponents(2, 1.5, 1.0), InvalidArgument);
  CHECK_THROWS_AS(moser_exponents(3, 3.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(moser_exponents(3, 2.0, 0.5), InvalidArgument);
}

TEST_CASE("Moser sigma decays geometrically along r = 2^k") {
  for (int n = 3; n <= 6; ++n) {
    const double p = 1.0 + 0.5 * (static_cast<double>(n) / (n - 2) - 1.0);
    const MoserExponents e = moser_exponents(n, p, 1.0);
    double bound = e.sigma;
    for (int k = 1; k <= 20; ++k) {
      bound *= e.theta;
      CHECK(moser_sigma(n, p, std::ldexp(1.0, k)) <= bound * (1.0 + 1e-12));
    }
  }
}
