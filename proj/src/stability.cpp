#include "nlrad/stability.hpp"

#include <algorithm>
#include <cmath>

#include "nlrad/errors.hpp"

namespace nlrad {

namespace {

struct ElementData {
  std::vector<double> meas;    // omega (rho_{k+1}^n - rho_k^n) / n
  std::vector<double> coef;    // mean of a(l_r(u)) on the element
  std::vector<double> du;      // u' on the element
  std::vector<double> dprime;  // a'(l_r(u)) at the nodes
};

ElementData element_data(const StationarySolution& solution, const DiffusionCoefficient& a) {
  const auto& grid = solution.u.grid();
  const std::size_t cells = static_cast<std::size_t>(grid.cells());
  const int n = grid.dim();
  const double h = grid.h();
  ElementData e;
  e.meas.resize(cells);
  e.coef.resize(cells);
  e.du.resize(cells);
  for (std::size_t k = 0; k < cells; ++k) {
    e.meas[k] = grid.surface_factor() *
                (std::pow(grid.node(k + 1), n) - std::pow(grid.node(k), n)) / n;
    e.coef[k] = 0.5 * (solution.coefficient_field[k] + solution.coefficient_field[k + 1]);
    e.du[k] = (solution.u[k + 1] - solution.u[k]) / h;
  }
  e.dprime.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) e.dprime[i] = a.derivative(solution.lr_u[i]);
  return e;
}

bool positive_definite(const Eigen::MatrixXd& M, const Eigen::MatrixXd& H, double shift) {
  Eigen::LLT<Eigen::MatrixXd> llt(M - shift * H);
  return llt.info() == Eigen::Success;
}

}  // namespace

StabilityForm assemble_form(const StationarySolution& solution, const InteractionKernel& kernel,
                            const DiffusionCoefficient& a) {
  require_same_grid(solution.u, kernel.weight());
  const auto& grid = solution.u.grid();
  const auto n = static_cast<Eigen::Index>(grid.cells());  // free nodes 0..N-1
  const double h = grid.h();
  const ElementData e = element_data(solution, a);
  const Eigen::MatrixXd& L = kernel.matrix();

  StabilityForm form{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n),
                     Eigen::MatrixXd::Zero(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const double w = e.meas[k] / (h * h);
    const Eigen::Index idx[2] = {k, k + 1};
    const double sgn[2] = {-1.0, 1.0};
    for (int p = 0; p < 2; ++p) {
      if (idx[p] >= n) continue;
      for (int q = 0; q < 2; ++q) {
        if (idx[q] >= n) continue;
        form.H(idx[p], idx[q]) += sgn[p] * sgn[q] * w;
        form.S(idx[p], idx[q]) += sgn[p] * sgn[q] * w * e.coef[k];
      }
    }
    if (e.du[k] == 0.0) continue;
    const Eigen::RowVectorXd c =
        0.5 * (e.dprime[k] * L.row(k).head(n) + e.dprime[k + 1] * L.row(k + 1).head(n));
    const double g = e.du[k] * e.meas[k] / h;
    form.Nm.row(k) -= g * c;
    if (k + 1 < n) form.Nm.row(k + 1) += g * c;
  }
  return form;
}

double evaluate_form(const StationarySolution& solution, const InteractionKernel& kernel,
                     const DiffusionCoefficient& a, const RadialField& phi) {
  require_same_grid(solution.u, phi);
  if (phi[phi.size() - 1] != 0.0) throw InvalidArgument("test direction must vanish at rho = R");
  const auto& grid = phi.grid();
  const double h = grid.h();
  const ElementData e = element_data(solution, a);
  const RadialField l_phi = kernel.apply(phi);
  double diffusion = 0.0, coupling = 0.0;
  for (std::size_t k = 0; k < e.meas.size(); ++k) {
    const double dphi = (phi[k + 1] - phi[k]) / h;
    diffusion += e.coef[k] * dphi * dphi * e.meas[k];
    const double nonlocal = 0.5 * (e.dprime[k] * l_phi[k] + e.dprime[k + 1] * l_phi[k + 1]);
    coupling += nonlocal * e.du[k] * dphi * e.meas[k];
  }
  return diffusion - coupling;
}

StabilityCertificate min_eigenvalue(const StabilityForm& form, const RadialGrid& grid,
                                    double tol_stab) {
  const Eigen::Index n = form.S.rows();
  const Eigen::MatrixXd M = form.S - 0.5 * (form.Nm + form.Nm.transpose());
  const Eigen::MatrixXd& H = form.H;

  auto rayleigh = [&](const Eigen::VectorXd& v) { return v.dot(M * v) / v.dot(H * v); };

  // Upper bound from trial vectors, lower bound by widening until M - sH > 0.
  double hi = rayleigh(Eigen::VectorXd::Ones(n));
  for (Eigen::Index i = 0; i < n; ++i) hi = std::min(hi, M(i, i) / H(i, i));
  double width = std::max(1.0, std::abs(hi));
  double lo = hi - width;
  for (int k = 0; !positive_definite(M, H, lo); ++k) {
    if (k > 200) throw NumericalError("stability: no lower bound for the spectrum");
    hi = lo;
    width *= 2.0;
    lo = hi - width;
  }
  // The spectrum clusters near min a when the nonlocal part is weak, so the
  // bracket itself is driven to roundoff rather than left to inverse iteration.
  for (int k = 0; k < 200 && hi - lo > 1e-14 * (std::abs(lo) + std::abs(hi)) + 1e-300; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (positive_definite(M, H, mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  // Eigenvector by inverse iteration at the certified lower shift.
  Eigen::LLT<Eigen::MatrixXd> llt(M - lo * H);
  if (llt.info() != Eigen::Success) throw NumericalError("stability: shifted factorization failed");
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
  v /= std::sqrt(v.dot(H * v));
  double quotient = rayleigh(v);
  int it = 0;
  for (; it < 200; ++it) {
    Eigen::VectorXd w = llt.solve(H * v);
    w /= std::sqrt(w.dot(H * w));
    const double next = rayleigh(w);
    v = w;
    const bool settled = std::abs(next - quotient) <= 1e-13 * std::max(std::abs(next), 1e-300);
    quotient = next;
    if (settled) break;
  }
  const double lambda = 0.5 * (lo + hi);
  Eigen::Index big = 0;
  v.cwiseAbs().maxCoeff(&big);
  if (v(big) < 0.0) v = -v;

  std::vector<double> ev(v.data(), v.data() + n);
  ev.push_back(0.0);
  StabilityCertificate cert{lambda, lambda >= -tol_stab, tol_stab,
                            RadialField(grid, std::move(ev), true), grid.size(), 0.0, it + 1};
  return cert;
}

StabilityCertificate certify(const StationaryProblem& problem, const StationarySolution& solution) {
  const StabilityForm form = assemble_form(solution, problem.kernel, problem.a);
  StabilityCertificate cert = min_eigenvalue(form, problem.grid, 1e-8 * problem.a.lower_bound());
  cert.r = problem.r;
  return cert;
}

double stability_lower_bound(const StationaryProblem& problem, const StationarySolution& solution,
                             double eps, double mu_ref, double c1) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  const double inf_a = min_value(solution.coefficient_field);
  const double lip = sup_abs_derivative(problem.a, -eps, mu_ref + eps);
  return inf_a - c1 * l2_norm(problem.g) * lip * l2_norm(problem.f) / inf_a;
}

}  // namespace nlrad
