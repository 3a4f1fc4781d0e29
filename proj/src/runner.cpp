#include "nlrad/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "nlrad/branch.hpp"
#include "nlrad/csv.hpp"
#include "nlrad/errors.hpp"
#include "nlrad/manifest.hpp"
#include "nlrad/parabolic.hpp"
#include "nlrad/stability.hpp"

namespace nlrad {

using json = nlohmann::json;

namespace {

FixedPointOptions fixed_point_options(const RunConfig& c) {
  return FixedPointOptions{c.run.damping, c.run.tol, c.run.max_iter};
}

json tolerances(const RunConfig& c, const StationaryProblem* p) {
  json t{{"fixed_point_tol", c.run.tol},
         {"max_iter", c.run.max_iter},
         {"damping", c.run.damping},
         {"pd_residual_tol", 1e-8},
         {"comparison_slack", 1e-6},
         {"energy_relative_slack", 1e-3}};
  if (p) {
    t["tol_stab"] = 1e-8 * p->a.lower_bound();
    t["dt"] = c.run.dt.value_or(1e-3 * p->grid.radius() * p->grid.radius() / p->a.lower_bound());
    t["C1"] = c.constants.C1.value_or(default_c1(p->grid));
    t["K_c"] = c.constants.K_c.value_or(1.0);
    t["t0"] = c.constants.t0.value_or(c.run.T / 4.0);
    t["eps"] = c.constants.eps;
  }
  return t;
}

std::string profile_csv(const StationarySolution& s) {
  std::ostringstream out;
  CsvWriter csv(out, {"rho", "u", "lr_u", "a_lr_u"});
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    csv.row({s.u.grid().node(i), s.u[i], s.lr_u[i], s.coefficient_field[i]});
  }
  return out.str();
}

std::string plot(const std::vector<double>& x, const std::vector<double>& y) {
  std::ostringstream out;
  write_plot_data(out, x, y);
  return out.str();
}

std::vector<double> nodes_of(const RadialField& u) {
  const auto n = u.grid().nodes();
  return {n.begin(), n.end()};
}

json run_stationary(const RunConfig& c, const StationaryProblem& p, ArtifactSink& sink) {
  const StationarySolution s =
      fixed_point_solve(p, RadialField::zeros(p.grid, true), fixed_point_options(c));
  if (c.output.csv) sink.write("solution.csv", profile_csv(s));
  if (c.output.plot_data) sink.write("profile.dat", plot(nodes_of(s.u), s.u.data()));
  json r{{"iterations", s.iterations},
         {"residual", s.residual},
         {"pde_residual", s.pde_residual},
         {"sup_norm", sup_norm(s.u)},
         {"lr_center", s.lr_u[0]}};
  if (c.run.stability) {
    const StabilityCertificate cert = certify(p, s);
    r["lambda_min"] = cert.lambda_min;
    r["stable"] = cert.stable;
  }
  return r;
}

json run_pd_roots(const RunConfig& c, const StationaryProblem& p, ArtifactSink& sink) {
  const auto roots = solve_P_d(p, c.constants.mu_max);
  std::ostringstream out;
  CsvWriter csv(out, {"mu", "tangential", "sup_norm", "lr_center", "pde_residual"});
  json list = json::array();
  for (const auto& s : roots) {
    csv.row({s.mu, s.tangential ? 1.0 : 0.0, sup_norm(s.solution.u), s.solution.lr_u[0],
             s.solution.pde_residual});
    list.push_back({{"mu", s.mu}, {"tangential", s.tangential}});
  }
  if (c.output.csv) sink.write("roots.csv", out.str());
  return json{{"count", roots.size()}, {"roots", list}};
}

json run_branch(const RunConfig& c, const StationaryProblem& p, ArtifactSink& sink) {
  BranchOptions bo;
  bo.r_steps = c.run.r_steps;
  bo.fixed_point = fixed_point_options(c);
  bo.eps = c.constants.eps;
  bo.c1 = c.constants.C1;
  bo.mu_max = c.constants.mu_max;
  bo.stability = c.run.stability;
  const Branch br = continue_branch(p, bo);
  std::ostringstream out;
  write_branch_csv(br, out);
  if (c.output.csv) sink.write("branch.csv", out.str());
  if (c.output.plot_data) {
    std::vector<double> r, sup;
    for (const auto& pt : br.points) {
      r.push_back(pt.r);
      sup.push_back(sup_norm(pt.solution.u));
    }
    sink.write("branch_sup.dat", plot(r, sup));
  }
  if (br.truncated) throw NumericalError("branch truncated: " + br.diagnostic);
  const ComparisonResult mono = branch_monotonicity(br, 1e-6);
  return json{{"points", br.points.size()},
              {"mu_d", br.mu_d},
              {"Q", br.points.empty() ? 0.0 : br.points.front().Q},
              {"monotone", mono.ok},
              {"monotonicity_worst", mono.worst}};
}

json run_parabolic(const RunConfig& c, const StationaryProblem& p, ArtifactSink& sink) {
  const RadialField u0 = c.problem.u0.sample(p.grid, true);
  const ParabolicProblem pp = make_parabolic_problem(p, u0, c.run.T, c.run.dt);
  RunOptions ro;
  ro.stride = c.run.stride;

  // Corridor between the r = 0 and the smallest r = d solution, when u0 starts inside it.
  std::optional<std::pair<RadialField, RadialField>> corridor;
  try {
    const RadialField lo = fixed_point_solve(with_radius(p, 0.0), RadialField::zeros(p.grid, true),
                                             fixed_point_options(c)).u;
    const auto pd = solve_P_d(with_radius(p, p.grid.diameter()), c.constants.mu_max);
    if (!pd.empty()) {
      require_in_corridor(u0, lo, pd.front().solution.u);
      corridor = std::make_pair(lo, pd.front().solution.u);
    }
  } catch (const Error&) {
    corridor.reset();
  }
  ro.corridor = corridor;

  std::optional<double> Q;
  try {
    const StationarySolution steady = fixed_point_solve(p, RadialField::zeros(p.grid, true),
                                                        fixed_point_options(c));
    ro.steady = steady.u;
    const auto pd = solve_P_d(with_radius(p, p.grid.diameter()), c.constants.mu_max);
    if (!pd.empty()) {
      Q = uniqueness_quotient(p, pd.front().mu, c.constants.eps,
                              c.constants.C1.value_or(default_c1(p.grid)));
    }
  } catch (const Error&) {
    ro.steady.reset();
  }

  const Trajectory tr = run(pp, ro);
  const EnergyLedger energy = energy_ledger(tr, pp);
  const double t0 = c.constants.t0.value_or(c.run.T / 4.0);
  const AbsorbingReport abs =
      absorbing_set_report(pp, tr, t0, c.constants.K_c, c.constants.K_c_certified);
  const LinfReport linf = linf_tracking(tr);

  if (c.output.csv) {
    std::ostringstream out;
    write_trajectory_csv(tr, out);
    sink.write("trajectory.csv", out.str());
  }
  if (c.output.plot_data) {
    sink.write("energy_lhs.dat", plot(tr.t, energy.lhs));
    sink.write("energy_rhs.dat", plot(tr.t, energy.rhs));
    sink.write("sup_norm.dat", plot(tr.t, tr.sup));
    sink.write("v_norm.dat", plot(tr.t, tr.h1));
  }
  if (c.output.profiles) {
    for (std::size_t k = 0; k < tr.snapshots.size(); ++k) {
      char name[48];
      std::snprintf(name, sizeof name, "profiles/profile_%06zu.dat", k);
      sink.write(name, plot(nodes_of(tr.snapshots[k]), tr.snapshots[k].data()));
    }
  }

  json r{{"steps", pp.steps()},
         {"dt", pp.dt},
         {"energy", {{"holds", energy.holds}, {"worst_excess", energy.worst_excess}}},
         {"absorbing",
          {{"t0", abs.t0},
           {"a1", abs.a1},
           {"a2", abs.a2},
           {"a3", abs.a3},
           {"K_c", abs.kc},
           {"bound", abs.bound},
           {"observed_sup", abs.observed_sup},
           {"asserted", abs.asserted},
           {"within_bound", abs.within_bound},
           {"bounded", abs.bounded}}},
         {"linf", {{"sup", linf.sup}, {"plateau", linf.plateau}}}};
  std::vector<std::string> violated;
  if (!energy.holds) violated.push_back("energy ledger");
  if (abs.asserted && !abs.within_bound) violated.push_back("absorbing bound");
  if (corridor) {
    const CorridorReport cr = corridor_check(tr, pp, corridor->first, corridor->second);
    r["corridor"] = {{"preconditions", cr.preconditions},
                     {"holds", cr.holds},
                     {"worst_margin", cr.worst_margin}};
    if (cr.preconditions && !cr.holds) violated.push_back("corridor");
  }
  if (ro.steady) {
    const SteadyReport sr = steady_convergence_report(tr, *ro.steady, Q && *Q < 1.0);
    r["steady"] = {{"Q", Q ? json(*Q) : json(nullptr)},
                   {"asserted", sr.asserted},
                   {"initial", sr.initial},
                   {"final", sr.final},
                   {"converged", sr.converged}};
    if (c.output.plot_data) sink.write("dist_to_steady.dat", plot(sr.t, sr.distance));
    if (sr.asserted && !sr.converged) violated.push_back("steady-state convergence");
  }
  if (!violated.empty()) {
    std::string msg = "property violated:";
    for (const auto& v : violated) msg += " " + v;
    // Results are kept in the manifest through the exception path.
    throw PropertyViolation(msg + "\n" + r.dump());
  }
  return r;
}

std::vector<std::vector<double>> cross_product(const std::vector<SweepAxis>& axes) {
  std::vector<std::vector<double>> out{{}};
  for (const auto& ax : axes) {
    std::vector<std::vector<double>> next;
    for (const auto& prefix : out) {
      for (double v : ax.values) {
        auto e = prefix;
        e.push_back(v);
        next.push_back(std::move(e));
      }
    }
    out = std::move(next);
  }
  return out;
}

json run_sweep(const RunConfig& c, ArtifactSink& sink, int workers) {
  if (c.run.sweep.empty()) throw ConfigError("$.run.sweep.axes: a sweep needs at least one axis");
  const auto entries = cross_product(c.run.sweep);
  std::vector<RunConfig> configs;
  for (const auto& values : entries) {
    RunConfig e = c;
    for (std::size_t k = 0; k < values.size(); ++k) e = substitute(e, c.run.sweep[k].path, values[k]);
    e.run.mode = c.run.sweep_mode;
    e.run.sweep.clear();
    configs.push_back(std::move(e));
  }

  std::vector<RunOutcome> outcomes(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < configs.size(); k = next++) {
      char name[32];
      std::snprintf(name, sizeof name, "entry_%04zu", k);
      outcomes[k] = run_mode(configs[k], sink.directory() / name, 1);
    }
  };
  const int count = std::clamp(workers, 1, static_cast<int>(configs.size()));
  std::vector<std::thread> pool;
  for (int w = 1; w < count; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  json list = json::array();
  std::ostringstream out;
  std::vector<std::string> header{"entry", "exit_code"};
  for (const auto& ax : c.run.sweep) header.push_back(ax.path);
  CsvWriter csv(out, header);
  int worst = kExitOk;
  for (std::size_t k = 0; k < configs.size(); ++k) {
    list.push_back({{"entry", k},
                    {"values", entries[k]},
                    {"exit_code", outcomes[k].exit_code},
                    {"directory", outcomes[k].directory.filename().string()}});
    std::vector<std::string> cells{std::to_string(k), std::to_string(outcomes[k].exit_code)};
    for (double v : entries[k]) cells.push_back(format_double(v));
    csv.raw_row(cells);
    worst = std::max(worst, outcomes[k].exit_code);
  }
  sink.write("sweep.csv", out.str());
  return json{{"entries", list}, {"worst_exit_code", worst}};
}

void finish(const ArtifactSink& sink, ManifestInfo info, RunOutcome& outcome) {
  info.status = outcome.exit_code == kExitOk ? "ok" : "error";
  info.exit_code = outcome.exit_code;
  info.error = outcome.error;
  write_manifest(sink, info);
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const InvalidArgument*>(&e)) return kExitConfig;
  if (dynamic_cast<const PropertyViolation*>(&e)) return kExitProperty;
  return kExitNumerical;
}

RunOutcome run_mode(const RunConfig& config, const std::filesystem::path& directory, int workers) {
  RunOutcome outcome;
  outcome.directory = directory;
  ArtifactSink sink(directory);
  ManifestInfo info;
  info.config_json = emit_config(config);
  info.mode = to_string(config.run.mode);
  info.seed = config.run.seed;
  info.tolerances_json = tolerances(config, nullptr).dump();
  info.results_json = "{}";

  if (config.run.mode == RunMode::verify) {
    VerifyOptions vo;
    vo.seed = config.run.seed;
    vo.r_steps = config.run.r_steps;
    RunOutcome v = run_verify_suite(directory, vo);
    return v;
  }

  try {
    if (config.run.mode == RunMode::sweep) {
      const json r = run_sweep(config, sink, workers);
      info.results_json = r.dump();
      outcome.exit_code = r["worst_exit_code"].get<int>();
      if (outcome.exit_code != kExitOk) outcome.error = "one or more sweep entries failed";
    } else {
      const StationaryProblem p = build_problem(config);
      info.tolerances_json = tolerances(config, &p).dump();
      json r;
      switch (config.run.mode) {
        case RunMode::stationary: r = run_stationary(config, p, sink); break;
        case RunMode::pd_roots: r = run_pd_roots(config, p, sink); break;
        case RunMode::branch: r = run_branch(config, p, sink); break;
        case RunMode::parabolic: r = run_parabolic(config, p, sink); break;
        default: break;
      }
      info.results_json = r.dump();
    }
  } catch (const std::exception& e) {
    outcome.exit_code = exit_code_for(e);
    std::string what = e.what();
    const auto nl = what.find('\n');
    if (nl != std::string::npos) {
      info.results_json = what.substr(nl + 1);
      what.resize(nl);
    }
    outcome.error = what;
  }
  finish(sink, info, outcome);
  return outcome;
}

RunOutcome run_verify_suite(const std::filesystem::path& directory, const VerifyOptions& options) {
  RunOutcome outcome;
  outcome.directory = directory;
  ArtifactSink sink(directory);
  ManifestInfo info;
  RunConfig defaults;
  defaults.run.mode = RunMode::verify;
  defaults.run.seed = options.seed;
  defaults.run.r_steps = options.r_steps;
  info.config_json = emit_config(defaults);
  info.mode = "verify";
  info.seed = options.seed;
  info.tolerances_json = json{{"linear_sup_error", 5e-4},
                              {"min_order", 1.8},
                              {"mc_standard_errors", 3},
                              {"mc_samples", options.mc_samples},
                              {"mc_triples", options.mc_triples},
                              {"endpoint", 1e-6},
                              {"reduction", 1e-6},
                              {"comparison_slack", 1e-6},
                              {"stability_constant", 1e-8},
                              {"form_identity", 1e-10},
                              {"decay_rate", 0.05},
                              {"steady_ratio", 1e-4}}
                             .dump();
  try {
    const auto results = run_verify(sink, options);
    info.results_json = results_json(results);
    const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
    if (!all) {
      outcome.exit_code = kExitProperty;
      outcome.error = "failed criteria:";
      for (const auto& r : results) {
        if (!r.passed) outcome.error += " " + std::to_string(r.id);
      }
    }
  } catch (const std::exception& e) {
    outcome.exit_code = exit_code_for(e);
    outcome.error = e.what();
  }
  finish(sink, info, outcome);
  return outcome;
}

}  // namespace nlrad
