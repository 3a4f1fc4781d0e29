#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "nlrad/stability.hpp"

using namespace nlrad;

namespace {

const DiffusionCoefficient kRational = DiffusionCoefficient::rational(1.0, 1.0, 0.0, -0.5, 10.0);

double dense_min_eigenvalue(const StabilityForm& form) {
  const Eigen::MatrixXd M = form.S - 0.5 * (form.Nm + form.Nm.transpose());
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(M, form.H);
  return es.eigenvalues()(0);
}

}  // namespace

TEST_CASE("constant coefficient: lambda_min equals the constant") {
  const RadialGrid g(3, 1.0, 64);
  for (double c : {0.5, 2.0, 7.0}) {
    const auto p = make_stationary_problem(DiffusionCoefficient::constant(c), RadialField::constant(g, 1.0),
                                           RadialField::constant(g, 1.0), 1.0);
    const auto s = fixed_point_solve(p, RadialField::zeros(g, true));
    const auto cert = certify(p, s);
    CHECK(cert.lambda_min == doctest::Approx(c).epsilon(1e-10));
    CHECK(cert.stable);
    CHECK(cert.eigenvector.dirichlet());
  }
}

TEST_CASE("bisection agrees with a dense generalized eigensolver") {
  for (int n = 1; n <= 3; ++n) {
    for (double frac : {0.3, 0.7, 1.0}) {
      const RadialGrid g(n, 1.0, 48);
      const auto p = make_stationary_problem(kRational, RadialField::constant(g, 1.5),
                                             RadialField::constant(g, 1.0), frac * g.diameter());
      const auto s = fixed_point_solve(p, RadialField::zeros(g, true));
      const StabilityForm form = assemble_form(s, p.kernel, p.a);
      const auto cert = min_eigenvalue(form, g, 1e-8);
      CHECK(cert.lambda_min == doctest::Approx(dense_min_eigenvalue(form)).epsilon(1e-9));
    }
  }
}

TEST_CASE("assembled form matches element-wise evaluation") {
  const RadialGrid g(3, 1.0, 32);
  const auto p = make_stationary_problem(kRational, RadialField::constant(g, 1.0), RadialField::constant(g, 1.0), 1.2);
  const auto s = fixed_point_solve(p, RadialField::zeros(g, true));
  const StabilityForm form = assemble_form(s, p.kernel, p.a);
  CHECK((form.S - form.S.transpose()).norm() < 1e-12 * form.S.norm());
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    std::vector<double> v(g.size(), 0.0);
    Eigen::VectorXd x(g.cells());
    for (int i = 0; i < g.cells(); ++i) x(i) = v[static_cast<std::size_t>(i)] = u(rng);
    const double direct = evaluate_form(s, p.kernel, p.a, RadialField(g, v, true));
    CHECK(direct == doctest::Approx(x.dot((form.S - form.Nm) * x)).epsilon(1e-10));
  }
}

TEST_CASE("a positive lower bound certifies stability") {
  const RadialGrid g(3, 1.0, 64);
  const auto p = make_stationary_problem(kRational, RadialField::constant(g, 0.1), RadialField::constant(g, 1.0), 1.0);
  const auto s = fixed_point_solve(p, RadialField::zeros(g, true));
  const double bound = stability_lower_bound(p, s, 0.01, s.lr_u[0], default_c1(g));
  const auto cert = certify(p, s);
  CHECK(bound > 0.0);
  CHECK(cert.lambda_min >= bound);
  CHECK(cert.stable);
}
