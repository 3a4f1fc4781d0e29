#include "nlrad/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "nlrad/branch.hpp"
#include "nlrad/csv.hpp"
#include "nlrad/errors.hpp"
#include "nlrad/montecarlo.hpp"
#include "nlrad/parabolic.hpp"
#include "nlrad/stability.hpp"

namespace nlrad {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

DiffusionCoefficient rational_a() { return DiffusionCoefficient::rational(1.0, 1.0, 0.0, -0.5, 10.0); }

StationaryProblem make_problem(int n, int N, const DiffusionCoefficient& a, double f, double g,
                               double r_fraction) {
  const RadialGrid grid(n, 1.0, N);
  return make_stationary_problem(a, RadialField::constant(grid, f), RadialField::constant(grid, g),
                                 r_fraction * grid.diameter());
}

std::mt19937_64 seeded(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32), stream};
  return std::mt19937_64(seq);
}

double observed_order(double coarse, double fine) { return std::log2(coarse / fine); }

/// Orders between successive refinements; errors already at the roundoff
/// floor on both sides count as converged.
bool orders_ok(const std::vector<double>& errors, double floor, double min_order,
               std::vector<double>* orders) {
  bool ok = true;
  for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
    const bool at_floor = errors[k] <= floor && errors[k + 1] <= floor;
    const double p = observed_order(errors[k], errors[k + 1]);
    orders->push_back(p);
    if (!at_floor && !(p >= min_order)) ok = false;
  }
  return ok;
}

std::string dump_csv(const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  CsvWriter csv(out, header);
  for (const auto& r : rows) csv.row(r);
  return out.str();
}

std::string plot(const std::vector<double>& x, const std::vector<double>& y) {
  std::ostringstream out;
  write_plot_data(out, x, y);
  return out.str();
}

}  // namespace

CriterionResult verify_linear_oracle(ArtifactSink& sink, const VerifyOptions&) {
  CriterionResult res{1, "linear oracle", true, ""};
  std::vector<std::vector<double>> rows;
  std::ostringstream detail;
  const std::vector<int> Ns{64, 128, 256, 512};
  constexpr double kFloor = 1e-11;

  for (int n = 1; n <= 3; ++n) {
    std::vector<double> errors;
    for (int N : Ns) {
      const StationaryProblem p = make_problem(n, N, DiffusionCoefficient::constant(1.0), 1.0, 1.0, 1.0);
      const StationarySolution sol = fixed_point_solve(p, RadialField::zeros(p.grid, true));
      const RadialField exact =
          RadialField::sample(p.grid, [n](double rho) { return (1.0 - rho * rho) / (2.0 * n); });
      const double err = sup_distance(sol.u, exact);
      errors.push_back(err);
      rows.push_back({static_cast<double>(n), static_cast<double>(N), err});
      if (N == 256 && err > 5e-4) res.passed = false;
    }
    std::vector<double> orders;
    if (!orders_ok(errors, kFloor, 1.8, &orders)) res.passed = false;
    detail << "n=" << n << " err256=" << fmt(errors[2]) << "; ";
  }

  // Variable coefficient A = 1 + rho^2, f = 1 + rho, n = 3: a genuinely O(h^2) case.
  auto exact_var = [](double t) {
    auto F = [](double x) { return std::log1p(x * x) / 6.0 + (x - std::atan(x)) / 4.0; };
    return F(1.0) - F(t);
  };
  std::vector<double> errors;
  for (int N : Ns) {
    const RadialGrid grid(3, 1.0, N);
    const RadialField A = RadialField::sample(grid, [](double r) { return 1.0 + r * r; });
    const RadialField f = RadialField::sample(grid, [](double r) { return 1.0 + r; });
    const double err = sup_distance(solve_linear_radial(A, f), RadialField::sample(grid, exact_var));
    errors.push_back(err);
    rows.push_back({0.0, static_cast<double>(N), err});
  }
  std::vector<double> orders;
  if (!orders_ok(errors, kFloor, 1.8, &orders)) res.passed = false;
  detail << "variable-coefficient orders=";
  for (double p : orders) detail << fmt(p) << ' ';
  res.detail = detail.str();
  sink.write("c1_linear_oracle.csv", dump_csv({"n", "N", "sup_error"}, rows));
  return res;
}

CriterionResult verify_kernel_geometry(ArtifactSink& sink, const VerifyOptions& options) {
  CriterionResult res{2, "kernel geometry", true, ""};
  std::vector<std::vector<double>> rows;
  int outside = 0;
  for (int n = 1; n <= 3; ++n) {
    for (const CapSample& c : mc_cap_validation(n, options.mc_triples, options.mc_samples, options.seed)) {
      rows.push_back({static_cast<double>(n), c.t, c.s, c.r, c.exact, c.estimate, c.std_error,
                      c.within ? 1.0 : 0.0});
      if (!c.within) ++outside;
    }
  }
  if (outside > 0) res.passed = false;
  sink.write("c2_cap_monte_carlo.csv",
             dump_csv({"n", "t", "s", "r", "exact", "estimate", "std_error", "within"}, rows));

  // Endpoints: l_0 = 0 and l_d = integral of g u over the ball.
  const double closed[4] = {0.0, 2.0 * 11.0 / 12.0, 2.0 * std::numbers::pi * 23.0 / 60.0,
                            4.0 * std::numbers::pi * 13.0 / 60.0};
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const RadialGrid grid(n, 1.0, 256);
    const RadialField g = RadialField::sample(grid, [](double r) { return 1.0 + r; });
    const RadialField u = RadialField::sample(grid, [](double r) { return 1.0 - r * r; }, true);
    worst = std::max(worst, sup_norm(InteractionKernel(g, 0.0).apply(u)));
    const RadialField full = InteractionKernel(g, grid.diameter()).apply(u);
    for (std::size_t i = 0; i < full.size(); ++i) worst = std::max(worst, std::abs(full[i] - closed[n]));
  }
  if (worst > 1e-6) res.passed = false;
  res.detail = "outside 3 SE=" + std::to_string(outside) + "/" +
               std::to_string(3 * options.mc_triples) + "; endpoint error=" + fmt(worst) +
               "; seed=" + std::to_string(options.seed);
  return res;
}

CriterionResult verify_scalar_reduction(ArtifactSink& sink, const VerifyOptions&) {
  CriterionResult res{3, "scalar reduction at r = d", true, ""};
  const StationaryProblem p = make_problem(3, 256, rational_a(), 1.0, 1.0, 1.0);
  const StationarySolution sol = fixed_point_solve(p, RadialField::zeros(p.grid, true));
  const double c = 4.0 * std::numbers::pi / 45.0;
  const double mu_star = c / (1.0 - c);
  const double gap = std::abs(sol.lr_u[0] - mu_star);
  const RadialField expected = RadialField::sample(
      p.grid, [mu_star](double rho) { return (1.0 + mu_star) * (1.0 - rho * rho) / 6.0; });
  const double rel = sup_distance(sol.u, expected) / sup_norm(expected);
  res.passed = gap <= 1e-6 && rel <= 1e-6;
  res.detail = "|l_d(u) - mu*|=" + fmt(gap) + "; sup-rel=" + fmt(rel) + "; iterations=" +
               std::to_string(sol.iterations);
  std::ostringstream out;
  CsvWriter csv(out, {"rho", "u", "expected"});
  for (std::size_t i = 0; i < sol.u.size(); ++i) csv.row({p.grid.node(i), sol.u[i], expected[i]});
  sink.write("c3_reduction_profile.csv", out.str());
  return res;
}

CriterionResult verify_multiplicity(ArtifactSink& sink, const VerifyOptions&) {
  CriterionResult res{4, "multiplicity", true, ""};
  std::ostringstream detail;
  const auto base = make_problem(3, 256, DiffusionCoefficient::constant(1.0), 1.0, 1.0, 1.0);

  // r = d: staircase fitted to I_d.
  const auto I_d = interval_I(base);
  const Staircase st = staircase_builder(I_d.first, 2.0 * I_d.second, 1.0, 3);
  const StationaryProblem p = make_stationary_problem(st.coefficient, base.f, base.g, base.r);
  const auto roots = scalar_mu_roots(st.coefficient, I_d.first);
  const auto pd = solve_P_d(p);
  const MultistartResult ms = multistart_solve(p, st.designed_intervals);
  bool localized = true;
  for (const auto& e : ms.solutions) localized = localized && e.localized;
  bool matched = ms.solutions.size() == pd.size();
  for (const auto& e : ms.solutions) {
    const bool hit = std::any_of(pd.begin(), pd.end(), [&](const PdSolution& s) {
      return sup_distance(s.solution.u, e.solution.u) <= 1e-6 * sup_norm(s.solution.u);
    });
    matched = matched && hit;
  }
  const bool ordered = pd.size() == 2 && pd[0].solution.lr_u[0] < pd[1].solution.lr_u[0];
  const bool at_d = roots.size() == 2 && pd.size() == 2 && ms.solutions.size() == 2 && localized &&
                    matched && ordered && ms.failures.empty();
  detail << "r=d: roots=" << roots.size() << " multistart=" << ms.solutions.size()
         << " all_localized=" << localized << " matched=" << matched << "; ";

  std::ostringstream out;
  CsvWriter csv(out, {"r", "mu_or_lr_min", "lr_max", "sup_norm", "tangential", "localized"});
  for (const auto& s : pd) {
    csv.row({p.r, s.mu, s.mu, sup_norm(s.solution.u), s.tangential ? 1.0 : 0.0, 1.0});
  }

  // r = 0.8 d: staircase fitted to I_{0.8d}; Picard from each designed interval.
  const StationaryProblem probe = with_radius(base, 0.8 * base.grid.diameter());
  const auto I_r = interval_I(probe);
  const Staircase st8 = staircase_builder(I_r.first, 2.0 * I_r.second, 1.0, 3);
  const StationaryProblem p8 = make_stationary_problem(st8.coefficient, base.f, base.g, probe.r);
  const MultistartResult ms8 = multistart_solve(p8, st8.designed_intervals);
  std::size_t localized8 = 0;
  for (const auto& e : ms8.solutions) {
    if (e.localized) ++localized8;
    csv.row({p8.r, min_value(e.solution.lr_u), max_value(e.solution.lr_u), sup_norm(e.solution.u), 0.0,
             e.localized ? 1.0 : 0.0});
  }
  detail << "r=0.8d: localized solutions=" << localized8;
  sink.write("c4_multiplicity.csv", out.str());
  res.passed = at_d && localized8 >= 2;
  res.detail = detail.str();
  return res;
}

CriterionResult verify_comparison(ArtifactSink& sink, const VerifyOptions& options) {
  CriterionResult res{5, "comparison structure", true, ""};
  auto rng = seeded(options.seed, 5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 3;
    const RadialGrid grid(n, 1.0, 64);
    std::vector<double> a(grid.size()), b(grid.size()), f(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      a[i] = 0.5 + 1.5 * unit(rng);
      b[i] = a[i] + unit(rng);
      f[i] = unit(rng);
    }
    const RadialField ua = solve_linear_radial(RadialField(grid, a), RadialField(grid, f));
    const RadialField ub = solve_linear_radial(RadialField(grid, b), RadialField(grid, f));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (ua[i] < ub[i] - 1e-14 * (1.0 + sup_norm(ua))) {
        ++violations;
        break;
      }
    }
  }

  const StationaryProblem p = make_problem(3, 256, rational_a(), 1.0, 1.0, 1.0);
  BranchOptions bo;
  bo.r_steps = options.r_steps;
  bo.stability = false;
  const Branch br = continue_branch(p, bo);
  const RadialField& u_d = br.points.front().solution.u;
  const RadialField& u_0 = br.points.back().solution.u;
  bool corridor = !br.truncated;
  double worst = 0.0;
  for (const auto& pt : br.points) {
    const ComparisonResult c = comparison_check(u_0, pt.solution.u, u_d);
    corridor = corridor && c.ok;
    worst = std::min(worst, c.worst);
  }
  const ComparisonResult mono = branch_monotonicity(br, 1e-6);
  std::ostringstream out;
  write_branch_csv(br, out);
  sink.write("c5_branch_rational.csv", out.str());
  res.passed = violations == 0 && corridor && mono.ok;
  res.detail = "frozen-solve violations=" + std::to_string(violations) + "/100; corridor worst=" +
               fmt(worst) + "; monotonicity worst=" + fmt(mono.worst) + "; points=" +
               std::to_string(br.points.size());
  return res;
}

CriterionResult verify_stability(ArtifactSink& sink, const VerifyOptions& options) {
  CriterionResult res{6, "stability", true, ""};
  std::ostringstream detail;

  const StationaryProblem pc = make_problem(3, 256, DiffusionCoefficient::constant(2.0), 1.0, 1.0, 0.5);
  const StabilityCertificate cc = certify(pc, fixed_point_solve(pc, RadialField::zeros(pc.grid, true)));
  const double const_err = std::abs(cc.lambda_min - 2.0) / 2.0;
  detail << "constant a=2 rel error=" << fmt(const_err) << "; ";

  const StationaryProblem pq = make_problem(3, 256, rational_a(), 0.1, 1.0, 1.0);
  BranchOptions bo;
  bo.r_steps = options.r_steps;
  const Branch br = continue_branch(pq, bo);
  bool positive = !br.truncated;
  bool implication = true;
  double lam_min = std::numeric_limits<double>::infinity();
  for (const auto& pt : br.points) {
    positive = positive && pt.lambda_min > 0.0;
    lam_min = std::min(lam_min, pt.lambda_min);
    if (pt.lower_bound > 0.0 && !pt.stable) implication = false;
  }
  const double Q = br.points.front().Q;
  std::ostringstream out;
  write_branch_csv(br, out);
  sink.write("c6_branch_q_below_one.csv", out.str());
  detail << "Q=" << fmt(Q) << " min lambda=" << fmt(lam_min) << " points=" << br.points.size()
         << " bound implies stable=" << implication << "; ";

  const StationaryProblem pf = make_problem(3, 256, rational_a(), 1.0, 1.0, 0.5);
  const StationarySolution sf = fixed_point_solve(pf, RadialField::zeros(pf.grid, true));
  const StabilityForm form = assemble_form(sf, pf.kernel, pf.a);
  const Eigen::MatrixXd SN = form.S - form.Nm;
  auto rng = seeded(options.seed, 6);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(pf.grid.size(), 0.0);
    Eigen::VectorXd x(static_cast<Eigen::Index>(pf.grid.cells()));
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = v[static_cast<std::size_t>(i)] = sym(rng);
    const RadialField phi(pf.grid, v, true);
    const double direct = evaluate_form(sf, pf.kernel, pf.a, phi);
    const double assembled = x.dot(SN * x);
    worst = std::max(worst, std::abs(direct - assembled) / std::abs(direct));
  }
  detail << "form identity worst rel=" << fmt(worst);

  res.passed = const_err <= 1e-8 && Q < 1.0 && positive && implication && worst <= 1e-10;
  res.detail = detail.str();
  return res;
}

CriterionResult verify_parabolic(ArtifactSink& sink, const VerifyOptions&) {
  CriterionResult res{7, "parabolic ledgers", true, ""};
  std::ostringstream detail;

  // Linear decay rate of |u|_2 against a lambda_1.
  {
    const StationaryProblem p = make_problem(3, 256, DiffusionCoefficient::constant(1.0), 0.0, 1.0, 0.5);
    const RadialField u0 = RadialField::sample(p.grid, [](double r) { return 1.0 - r * r; }, true);
    const ParabolicProblem pp = make_parabolic_problem(p, u0, 0.5, 1e-4);
    RunOptions ro;
    ro.stride = 1000;
    const Trajectory tr = run(pp, ro);
    const std::size_t k1 = 3000, k2 = tr.t.size() - 1;
    const double slope = (std::log(tr.l2[k2]) - std::log(tr.l2[k1])) / (tr.t[k2] - tr.t[k1]);
    const double rate = principal_eigenvalue(p.grid);
    const double rel = std::abs(-slope - rate) / rate;
    if (rel > 0.05) res.passed = false;
    detail << "decay rel error=" << fmt(rel) << "; ";
    std::vector<double> logs;
    for (double v : tr.l2) logs.push_back(std::log(v));
    sink.write("c7_decay_log_l2.dat", plot(tr.t, logs));
  }

  // Regression suite.
  const StationaryProblem rat = make_problem(3, 256, rational_a(), 1.0, 1.0, 0.5);
  const StationaryProblem lin = make_problem(3, 256, DiffusionCoefficient::constant(1.0), 1.0, 1.0, 0.5);
  const StationaryProblem lin0 = make_problem(3, 256, DiffusionCoefficient::constant(1.0), 0.0, 1.0, 0.5);
  const RadialField u_lo = fixed_point_solve(with_radius(rat, 0.0), RadialField::zeros(rat.grid, true)).u;
  const RadialField u_hi = solve_P_d(with_radius(rat, rat.grid.diameter())).front().solution.u;
  const RadialField bump = RadialField::sample(rat.grid, [](double r) { return 1.0 - r * r; }, true);
  RadialField mid = 0.5 * (u_lo + u_hi);
  mid.make_dirichlet();
  const RadialField zero = RadialField::zeros(rat.grid, true);

  struct Case {
    std::string name;
    const StationaryProblem* problem;
    RadialField u0;
    bool corridor;
  };
  const std::vector<Case> cases{{"rational_from_zero", &rat, zero, false},
                                {"rational_corridor_low", &rat, u_lo, true},
                                {"rational_corridor_mid", &rat, mid, true},
                                {"linear_forced", &lin, zero, false},
                                {"linear_free_decay", &lin0, bump, false}};
  int energy_fail = 0, corridor_fail = 0;
  for (const Case& c : cases) {
    const ParabolicProblem pp = make_parabolic_problem(*c.problem, c.u0, 1.0);
    RunOptions ro;
    ro.stride = 10;
    if (c.corridor) ro.corridor = std::make_pair(u_lo, u_hi);
    const Trajectory tr = run(pp, ro);
    const EnergyLedger e = energy_ledger(tr, pp);
    if (!e.holds) ++energy_fail;
    if (c.corridor) {
      const CorridorReport cr = corridor_check(tr, pp, u_lo, u_hi);
      if (!cr.holds || !cr.preconditions) ++corridor_fail;
    }
    std::ostringstream csv;
    write_trajectory_csv(tr, csv);
    sink.write("c7_" + c.name + ".csv", csv.str());
    sink.write("c7_" + c.name + "_energy_lhs.dat", plot(tr.t, e.lhs));
    sink.write("c7_" + c.name + "_energy_rhs.dat", plot(tr.t, e.rhs));
  }
  detail << "energy failures=" << energy_fail << "/" << cases.size()
         << " corridor failures=" << corridor_fail << "; ";

  // Contraction, gamma = 0 and gamma > 0.
  const ContractionReport c0 =
      contraction_check(make_parabolic_problem(lin, zero, 1.0), zero, bump);
  const ContractionReport c1 =
      contraction_check(make_parabolic_problem(rat, zero, 1.0), zero, 2.0 * bump);
  sink.write("c7_contraction_linear.dat", plot(c0.t, c0.weighted));
  sink.write("c7_contraction_rational.dat", plot(c1.t, c1.weighted));
  detail << "contraction gamma=" << fmt(c0.gamma) << " holds=" << c0.holds << " gamma=" << fmt(c1.gamma)
         << " holds=" << c1.holds;
  if (energy_fail || corridor_fail || !c0.holds || !c1.holds || c0.gamma != 0.0 || !(c1.gamma > 0.0)) {
    res.passed = false;
  }
  res.detail = detail.str();
  return res;
}

CriterionResult verify_moser(ArtifactSink& sink, const VerifyOptions& options) {
  CriterionResult res{8, "Moser exponents", true, ""};
  const MoserExponents e = moser_exponents(3, 2.0, 1.0);
  const double exact_err = std::max({std::abs(e.sigma - 5.0 / 7.0), std::abs(e.beta - 0.4),
                                     std::abs(e.delta - 0.7), std::abs(e.rho - 2.0 / 7.0),
                                     std::abs(e.theta - 7.0 / 8.0)});
  auto rng = seeded(options.seed, 8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_identity = 0.0;
  bool ranges = true, decay = true;
  std::vector<std::vector<double>> rows;
  for (int k = 0; k < 100; ++k) {
    const int n = 3 + static_cast<int>(unit(rng) * 4.0);
    const double pmax = static_cast<double>(n) / (n - 2);
    const double p = 1.0 + (pmax - 1.0) * (0.001 + 0.998 * unit(rng));
    const double r = 1.0 + 9.0 * unit(rng);
    const MoserExponents m = moser_exponents(n, p, r);
    const double id1 = std::abs(2.0 * r * m.sigma * m.delta - 1.0);
    const double id2 = std::abs(2.0 * m.rho - m.alpha * m.beta / m.delta);
    worst_identity = std::max({worst_identity, id1, id2});
    ranges = ranges && m.beta > 0 && m.beta < 1 && m.delta > 0 && m.delta < 1 && m.theta > 0 && m.theta < 1;
    double pow_theta = 1.0;
    for (int j = 1; j <= 20; ++j) {
      pow_theta *= m.theta;
      if (moser_sigma(n, p, std::ldexp(r, j)) > pow_theta * m.sigma * (1.0 + 1e-12)) decay = false;
    }
    rows.push_back({static_cast<double>(n), p, r, m.sigma, m.beta, m.rho, m.delta, m.theta, id1, id2});
  }
  sink.write("c8_moser.csv",
             dump_csv({"n", "p", "r", "sigma", "beta", "rho", "delta", "theta", "id_sigma_delta", "id_rho"}, rows));
  res.passed = exact_err <= 1e-15 && worst_identity <= 1e-12 && ranges && decay;
  res.detail = "(3,2,1) max error=" + fmt(exact_err) + "; identity worst=" + fmt(worst_identity) +
               "; ranges=" + std::to_string(ranges) + "; decay=" + std::to_string(decay);
  return res;
}

CriterionResult verify_steady_state(ArtifactSink& sink, const VerifyOptions&) {
  CriterionResult res{9, "steady-state convergence", true, ""};
  const StationaryProblem p = make_problem(3, 256, rational_a(), 0.1, 1.0, 0.5);
  const auto pd = solve_P_d(with_radius(p, p.grid.diameter()));
  const double Q = uniqueness_quotient(p, pd.front().mu, 0.01, default_c1(p.grid));
  const StationarySolution steady = fixed_point_solve(p, RadialField::zeros(p.grid, true));
  const double m = p.a.lower_bound();
  const double T = 50.0 / (m * principal_eigenvalue(p.grid));
  const ParabolicProblem pp = make_parabolic_problem(p, RadialField::zeros(p.grid, true), T);
  RunOptions ro;
  ro.stride = 100;
  ro.steady = steady.u;
  const Trajectory tr = run(pp, ro);
  const SteadyReport rep = steady_convergence_report(tr, steady.u, Q < 1.0);
  std::ostringstream csv;
  write_trajectory_csv(tr, csv);
  sink.write("c9_steady_trajectory.csv", csv.str());
  sink.write("c9_dist_to_steady.dat", plot(rep.t, rep.distance));
  res.passed = Q < 1.0 && rep.converged;
  res.detail = "Q=" + fmt(Q) + "; T=" + fmt(T) + "; final/initial=" + fmt(rep.final / rep.initial);
  return res;
}

std::vector<CriterionResult> run_verify(ArtifactSink& sink, const VerifyOptions& options) {
  using Check = CriterionResult (*)(ArtifactSink&, const VerifyOptions&);
  const Check checks[] = {verify_linear_oracle, verify_kernel_geometry, verify_scalar_reduction,
                          verify_multiplicity,  verify_comparison,      verify_stability,
                          verify_parabolic,     verify_moser,           verify_steady_state};
  const char* names[] = {"linear oracle", "kernel geometry", "scalar reduction at r = d",
                         "multiplicity", "comparison structure", "stability",
                         "parabolic ledgers", "Moser exponents", "steady-state convergence"};
  std::vector<CriterionResult> results;
  for (int k = 0; k < 9; ++k) {
    try {
      results.push_back(checks[k](sink, options));
    } catch (const std::exception& e) {
      results.push_back(CriterionResult{k + 1, names[k], false, std::string("error: ") + e.what()});
    }
  }
  std::ostringstream out;
  CsvWriter csv(out, {"criterion", "name", "passed", "detail"});
  for (const auto& r : results) {
    csv.raw_row({std::to_string(r.id), r.name, r.passed ? "1" : "0", r.detail});
  }
  sink.write("verify.csv", out.str());
  return results;
}

std::string results_json(const std::vector<CriterionResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results) {
    arr.push_back({{"criterion", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
  }
  return nlohmann::json{{"criteria", arr}}.dump();
}

}  // namespace nlrad
