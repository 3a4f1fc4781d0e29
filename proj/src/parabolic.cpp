#include "nlrad/parabolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "nlrad/csv.hpp"
#include "nlrad/errors.hpp"

namespace nlrad {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

RadialField coefficient_at(const StationaryProblem& problem, const RadialField& lr) {
  std::vector<double> A(lr.size());
  for (std::size_t i = 0; i < lr.size(); ++i) A[i] = problem.a.value(lr[i]);
  return RadialField(lr.grid(), std::move(A));
}

double max_of(const std::vector<double>& v, std::size_t from, std::size_t to) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = from; i < to; ++i) m = std::max(m, v[i]);
  return m;
}

}  // namespace

std::size_t ParabolicProblem::steps() const {
  return static_cast<std::size_t>(std::llround(T / dt));
}

ParabolicProblem make_parabolic_problem(const StationaryProblem& base, const RadialField& u0,
                                        double T, std::optional<double> dt) {
  require_same_grid(u0, base.f);
  if (u0[u0.size() - 1] != 0.0) throw InvalidArgument("initial value must vanish at rho = R");
  const double R = base.grid.radius();
  const double step = dt.value_or(1e-3 * R * R / base.a.lower_bound());
  if (!(step > 0.0)) throw InvalidArgument("time step must be positive");
  if (!(T >= step * (1.0 - 1e-12))) throw InvalidArgument("horizon must satisfy T >= dt");
  RadialField init = u0;
  init.make_dirichlet();
  return ParabolicProblem{base, std::move(init), T, step};
}

RadialField step(const RadialField& state, const StationaryProblem& problem, double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("time step must be positive");
  const auto& grid = problem.grid;
  const RadialField A = coefficient_at(problem, problem.kernel.apply(state));
  const auto a_face = face_coefficient(A);
  const auto area = grid.face_area();
  const auto vol = grid.volumes();
  const double h = grid.h();
  const std::size_t n = grid.size() - 1;  // unknowns 0..N-1

  std::vector<double> lower(n, 0.0), diag(n), upper(n, 0.0), rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double right = a_face[i] * area[i] / h;
    const double left = i > 0 ? a_face[i - 1] * area[i - 1] / h : 0.0;
    diag[i] = vol[i] / dt + right + left;
    if (i > 0) lower[i] = -left;
    if (i + 1 < n) upper[i] = -right;
    rhs[i] = vol[i] * (state[i] / dt + problem.f[i]);
  }
  solve_tridiagonal(lower, diag, upper, rhs);
  rhs.push_back(0.0);
  return RadialField(grid, std::move(rhs), true);
}

double v_norm(const RadialField& u) {
  const auto& grid = u.grid();
  const auto area = grid.face_area();
  const double h = grid.h();
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    const double du = (u[i + 1] - u[i]) / h;
    s += area[i] * du * du * h;
  }
  return std::sqrt(grid.surface_factor() * s);
}

Trajectory run(const ParabolicProblem& problem, const RunOptions& options) {
  if (options.stride < 1) throw InvalidArgument("snapshot stride must be >= 1");
  if (options.corridor) {
    require_in_corridor(problem.u0, options.corridor->first, options.corridor->second);
  }
  const auto& base = problem.base;
  const double m = base.a.lower_bound();
  const double lambda1 = principal_eigenvalue(base.grid);
  const double f2 = l2_norm(base.f);
  const double source_rate = f2 * f2 / (2.0 * m * lambda1);
  const std::size_t steps = problem.steps();

  Trajectory tr;
  tr.dt = problem.dt;
  tr.stride = options.stride;
  double dissipation = 0.0;
  const double half_u0 = 0.5 * std::pow(l2_norm(problem.u0), 2);

  auto record = [&](std::size_t k, const RadialField& u) {
    const double t = static_cast<double>(k) * problem.dt;
    const RadialField lr = base.kernel.apply(u);
    const double l2 = l2_norm(u);
    const double vn = v_norm(u);
    if (!std::isfinite(l2) || !std::isfinite(vn)) {
      throw NumericalError("trajectory norm is not finite at t = " + format_double(t));
    }
    if (k > 0) dissipation += 0.5 * m * problem.dt * vn * vn;
    tr.t.push_back(t);
    tr.l2.push_back(l2);
    tr.h1.push_back(vn);
    tr.sup.push_back(sup_norm(u));
    tr.lr_center.push_back(lr[0]);
    tr.lr_min.push_back(min_value(lr));
    tr.lr_max.push_back(max_value(lr));
    tr.energy_lhs.push_back(0.5 * l2 * l2 + dissipation);
    tr.energy_rhs.push_back(half_u0 + t * source_rate);
    if (options.corridor) {
      double lo = std::numeric_limits<double>::infinity(), hi = lo;
      for (std::size_t i = 0; i < u.size(); ++i) {
        lo = std::min(lo, u[i] - options.corridor->first[i]);
        hi = std::min(hi, options.corridor->second[i] - u[i]);
      }
      tr.corridor_margin_lo.push_back(lo);
      tr.corridor_margin_hi.push_back(hi);
    } else {
      tr.corridor_margin_lo.push_back(kNaN);
      tr.corridor_margin_hi.push_back(kNaN);
    }
    tr.dist_to_steady.push_back(options.steady ? l2_norm(u - *options.steady) : kNaN);
    if (k % static_cast<std::size_t>(options.stride) == 0) {
      tr.snapshot_times.push_back(t);
      tr.snapshots.push_back(u);
    }
  };

  RadialField u = problem.u0;
  record(0, u);
  for (std::size_t k = 1; k <= steps; ++k) {
    u = step(u, base, problem.dt);
    record(k, u);
  }
  tr.final_state = u;
  return tr;
}

void write_trajectory_csv(const Trajectory& tr, std::ostream& out) {
  CsvWriter csv(out, {"t", "l2", "h1", "sup", "lr_center", "energy_lhs", "energy_rhs",
                      "corridor_margin_lo", "corridor_margin_hi", "dist_to_steady"});
  for (std::size_t k = 0; k < tr.t.size(); ++k) {
    csv.row({tr.t[k], tr.l2[k], tr.h1[k], tr.sup[k], tr.lr_center[k], tr.energy_lhs[k],
             tr.energy_rhs[k], tr.corridor_margin_lo[k], tr.corridor_margin_hi[k],
             tr.dist_to_steady[k]});
  }
}

EnergyLedger energy_ledger(const Trajectory& tr, const ParabolicProblem& problem) {
  const double m = problem.base.a.lower_bound();
  const double lambda1 = principal_eigenvalue(problem.base.grid);
  const double f2 = l2_norm(problem.base.f);
  EnergyLedger ledger;
  double dissipation = 0.0;
  double scale = 0.0;
  for (std::size_t k = 0; k < tr.t.size(); ++k) {
    if (k > 0) dissipation += 0.5 * m * tr.dt * tr.h1[k] * tr.h1[k];
    ledger.lhs.push_back(0.5 * tr.l2[k] * tr.l2[k] + dissipation);
    ledger.rhs.push_back(0.5 * tr.l2[0] * tr.l2[0] + tr.t[k] * f2 * f2 / (2.0 * m * lambda1));
    scale = std::max(scale, ledger.rhs.back());
  }
  ledger.worst_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < ledger.lhs.size(); ++k) {
    const double allowed = ledger.rhs[k] * (1.0 + 1e-3) + 10.0 * tr.dt * scale;
    ledger.worst_excess = std::max(ledger.worst_excess, ledger.lhs[k] - allowed);
  }
  ledger.holds = ledger.worst_excess <= 0.0;
  return ledger;
}

void require_in_corridor(const RadialField& u0, const RadialField& u_lo, const RadialField& u_hi) {
  const ComparisonResult c = comparison_check(u_lo, u0, u_hi);
  if (!c.ok) {
    throw InvalidArgument("initial value leaves the corridor [u_lo, u_hi] at node " +
                          std::to_string(c.witness));
  }
}

CorridorReport corridor_check(const Trajectory& tr, const ParabolicProblem& problem,
                              const RadialField& u_lo, const RadialField& u_hi) {
  const double scale = sup_norm(u_hi);
  const double h = problem.base.grid.h();
  CorridorReport rep;
  rep.slack = 1e-6 * (1.0 + scale) + 5.0 * (h * h + tr.dt) * scale;

  // The ordering argument needs a nonincreasing on the range of l_r.
  double lr_hi = 0.0;
  for (double v : tr.lr_max) lr_hi = std::max(lr_hi, v);
  lr_hi = std::max(lr_hi, max_value(problem.base.kernel.apply(u_hi)));
  const auto& a = problem.base.a;
  for (int k = 0; k <= 1000 && rep.preconditions; ++k) {
    const double s = lr_hi * k / 1000.0;
    if (a.derivative(s) > 1e-12) rep.preconditions = false;
  }
  for (double b : a.breakpoints()) {
    if (b >= 0.0 && b <= lr_hi && a.derivative(b) > 1e-12) rep.preconditions = false;
  }

  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (const RadialField& u : tr.snapshots) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      rep.worst_margin = std::min({rep.worst_margin, u[i] - u_lo[i], u_hi[i] - u[i]});
    }
  }
  for (std::size_t k = 0; k < tr.corridor_margin_lo.size(); ++k) {
    if (std::isnan(tr.corridor_margin_lo[k])) continue;
    rep.worst_margin =
        std::min({rep.worst_margin, tr.corridor_margin_lo[k], tr.corridor_margin_hi[k]});
  }
  rep.holds = rep.worst_margin >= -rep.slack;
  return rep;
}

ContractionReport contraction_check(const ParabolicProblem& problem, const RadialField& u0_a,
                                    const RadialField& u0_b) {
  const auto& base = problem.base;
  const double m = base.a.lower_bound();
  const double g2 = l2_norm(base.g);
  const std::size_t steps = problem.steps();

  RadialField u1 = u0_a, u2 = u0_b;
  u1.make_dirichlet();
  u2.make_dirichlet();
  std::vector<double> dist2{std::pow(l2_norm(u1 - u2), 2)};
  std::vector<double> vn{v_norm(u1)};
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  auto track = [&](const RadialField& u) {
    const RadialField lr = base.kernel.apply(u);
    lo = std::min(lo, min_value(lr));
    hi = std::max(hi, max_value(lr));
  };
  track(u1);
  track(u2);
  for (std::size_t k = 1; k <= steps; ++k) {
    u1 = step(u1, base, problem.dt);
    u2 = step(u2, base, problem.dt);
    track(u1);
    track(u2);
    dist2.push_back(std::pow(l2_norm(u1 - u2), 2));
    vn.push_back(v_norm(u1));
  }

  ContractionReport rep;
  rep.gamma = sup_abs_derivative(base.a, lo, hi);
  double exponent = 0.0;
  for (std::size_t k = 0; k < dist2.size(); ++k) {
    if (k > 0) {
      const double p = std::pow(rep.gamma * g2 * vn[k], 2) / m;
      exponent += p * problem.dt;
    }
    rep.t.push_back(static_cast<double>(k) * problem.dt);
    rep.weighted.push_back(std::exp(-exponent) * dist2[k]);
  }
  const double w0 = rep.weighted.front();
  const double slack = 1e-3 * w0 + 10.0 * problem.dt * w0;
  for (std::size_t k = 1; k < rep.weighted.size(); ++k) {
    rep.worst_increase = std::max(rep.worst_increase, rep.weighted[k] - rep.weighted[k - 1]);
  }
  rep.holds = rep.worst_increase <= slack;
  return rep;
}

AbsorbingReport absorbing_set_report(const ParabolicProblem& problem, const Trajectory& tr,
                                     double t0, std::optional<double> kc, bool kc_certified) {
  if (!(t0 > 0.0)) throw InvalidArgument("t0 must be positive");
  if (tr.t.empty() || tr.t.back() < 2.0 * t0 * (1.0 - 1e-12)) {
    throw InvalidArgument("absorbing-set check needs T >= 2 t0");
  }
  const auto& base = problem.base;
  const double m = base.a.lower_bound();
  const double lambda1 = principal_eigenvalue(base.grid);
  const double f2sq = std::pow(l2_norm(base.f), 2);

  AbsorbingReport rep;
  rep.t0 = t0;
  rep.kc = kc.value_or(1.0);
  double lr_lo = std::numeric_limits<double>::infinity(), lr_hi = -lr_lo;
  for (std::size_t k = 0; k < tr.t.size(); ++k) {
    if (tr.t[k] <= t0) rep.rho0_sq = std::max(rep.rho0_sq, tr.l2[k] * tr.l2[k]);
    lr_lo = std::min(lr_lo, tr.lr_min[k]);
    lr_hi = std::max(lr_hi, tr.lr_max[k]);
  }
  const double lip = sup_abs_derivative(base.a, lr_lo, lr_hi);
  rep.a2 = t0 / m * f2sq;
  rep.a3 = t0 * lambda1 / (m * m) * f2sq + rep.rho0_sq / m;
  rep.a1 = rep.kc * rep.kc * lip * lip * rep.a3 / m;
  rep.bound = (rep.a3 / t0 + rep.a2) * std::exp(rep.a1);

  std::vector<double> late;
  for (std::size_t k = 0; k < tr.t.size(); ++k) {
    if (tr.t[k] >= t0 * (1.0 - 1e-12)) late.push_back(tr.h1[k] * tr.h1[k]);
  }
  rep.observed_sup = max_of(late, 0, late.size());
  rep.within_bound = rep.observed_sup <= rep.bound;
  rep.asserted = kc_certified || base.a.kind() == CoefficientKind::constant;
  const std::size_t cut = late.size() - late.size() / 4;
  const double early = max_of(late, 0, cut);
  const double tail = max_of(late, cut, late.size());
  rep.bounded = std::isfinite(rep.observed_sup) &&
                (late.size() < 4 || tail <= early * (1.0 + 1e-2) + 1e-300);
  return rep;
}

LinfReport linf_tracking(const Trajectory& tr) {
  LinfReport rep;
  if (tr.sup.empty()) return rep;
  const std::size_t cut = tr.sup.size() - tr.sup.size() / 4;
  rep.sup = max_of(tr.sup, 0, tr.sup.size());
  rep.early_max = max_of(tr.sup, 0, cut);
  rep.late_max = cut < tr.sup.size() ? max_of(tr.sup, cut, tr.sup.size()) : rep.early_max;
  rep.plateau = rep.late_max <= rep.early_max * (1.0 + 1e-2);
  return rep;
}

SteadyReport steady_convergence_report(const Trajectory& tr, const RadialField& u_r,
                                       bool certified) {
  SteadyReport rep;
  const bool recorded = !tr.dist_to_steady.empty() && !std::isnan(tr.dist_to_steady.front());
  if (recorded) {
    rep.t = tr.t;
    rep.distance = tr.dist_to_steady;
  } else {
    rep.t = tr.snapshot_times;
    for (const auto& u : tr.snapshots) rep.distance.push_back(l2_norm(u - u_r));
    if (tr.final_state && (rep.t.empty() || rep.t.back() < tr.t.back())) {
      rep.t.push_back(tr.t.back());
      rep.distance.push_back(l2_norm(*tr.final_state - u_r));
    }
  }
  if (rep.distance.empty()) throw InvalidArgument("empty trajectory");
  rep.initial = rep.distance.front();
  rep.final = rep.distance.back();
  rep.asserted = certified;
  rep.converged = rep.final <= 1e-4 * rep.initial;
  return rep;
}

double moser_sigma(int n, double p, double r) {
  return p * (n + 2) / (2.0 * (r * (2.0 * p - p * n + n) + n * p));
}

MoserExponents moser_exponents(int n, double p, double r_m) {
  if (n < 3) throw InvalidArgument("Moser exponents need n >= 3");
  if (!(p > 1.0)) throw InvalidArgument("Moser exponents need p > 1");
  if (!(p < static_cast<double>(n) / (n - 2))) {
    throw InvalidArgument("Moser exponents need p < n/(n-2)");
  }
  if (!(r_m >= 1.0)) throw InvalidArgument("Moser exponents need r >= 1");
  MoserExponents e;
  e.n = n;
  e.p = p;
  e.r_m = r_m;
  e.q = p / (p - 1.0);
  const double r = r_m;
  const double top = 2.0 * n * r - (n - 2) * (2.0 * r - 1.0) * p;
  e.sigma = moser_sigma(n, p, r);
  e.beta = top / ((n + 2) * (2.0 * r - 1.0) * p);
  e.rho = top / (2.0 * r * (p * (n + 2) + n) - 2.0 * n * (2.0 * r - 1.0) * p);
  e.alpha = (2.0 * r - 1.0) / r;
  e.delta = 1.0 - e.alpha * (1.0 - e.beta) / 2.0;
  e.c1 = p * (n + 2) / 2.0;
  e.c2 = 2.0 * p - p * n + n;
  e.c3 = n * p;
  e.theta = 1.0 - e.c2 / (2.0 * e.c2 + e.c3);
  e.lambda1_sum = e.sigma / (1.0 - e.theta);
  e.lambda2_sum = moser_sigma(n, p, 2.0 * r) / ((1.0 - e.theta) * (1.0 - e.theta));
  return e;
}

}  // namespace nlrad
