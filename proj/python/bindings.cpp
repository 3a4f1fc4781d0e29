#include <algorithm>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "nlrad/branch.hpp"
#include "nlrad/config.hpp"
#include "nlrad/errors.hpp"
#include "nlrad/kernel.hpp"
#include "nlrad/manifest.hpp"
#include "nlrad/parabolic.hpp"
#include "nlrad/runner.hpp"
#include "nlrad/stability.hpp"

namespace py = pybind11;
using namespace nlrad;

namespace {

py::array_t<double> to_numpy(const std::vector<double>& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::array_t<double> to_numpy(const RadialField& u) { return to_numpy(u.data()); }

py::dict solution_dict(const StationarySolution& s) {
  py::dict d;
  d["rho"] = to_numpy(std::vector<double>(s.u.grid().nodes().begin(), s.u.grid().nodes().end()));
  d["u"] = to_numpy(s.u);
  d["lr_u"] = to_numpy(s.lr_u);
  d["coefficient"] = to_numpy(s.coefficient_field);
  d["iterations"] = s.iterations;
  d["residual"] = s.residual;
  d["pde_residual"] = s.pde_residual;
  return d;
}

StationaryProblem problem_from(const std::string& config_json) {
  return build_problem(parse_config(config_json));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Radial solver for nonlocal diffusion problems in a ball";

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<ConvergenceError>(m, "ConvergenceError");
  py::register_exception<NumericalError>(m, "NumericalError");
  py::register_exception<PropertyViolation>(m, "PropertyViolation");
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

  m.def("cap_fraction", &cap_fraction, py::arg("dim"), py::arg("t"), py::arg("s"), py::arg("r"));

  m.def("principal_eigenvalue",
        [](int dim, double radius, int cells) { return principal_eigenvalue(RadialGrid(dim, radius, cells)); },
        py::arg("dim"), py::arg("radius") = 1.0, py::arg("cells") = 256);

  m.def("parse_config", [](const std::string& text, bool strict) { return emit_config(parse_config(text, strict)); },
        py::arg("text"), py::arg("strict") = true,
        "Validates a JSON config and returns it with every default filled in.");

  m.def("solve_stationary",
        [](const std::string& config_json) {
          const RunConfig c = parse_config(config_json);
          const StationaryProblem p = build_problem(c);
          return solution_dict(fixed_point_solve(p, RadialField::zeros(p.grid, true),
                                                 FixedPointOptions{c.run.damping, c.run.tol, c.run.max_iter}));
        },
        py::arg("config_json"));

  m.def("solve_pd",
        [](const std::string& config_json) {
          py::list out;
          for (const auto& s : solve_P_d(problem_from(config_json))) {
            py::dict d = solution_dict(s.solution);
            d["mu"] = s.mu;
            d["tangential"] = s.tangential;
            out.append(d);
          }
          return out;
        },
        py::arg("config_json"), "Every r = d solution through the scalar reduction.");

  m.def("stability",
        [](const std::string& config_json) {
          const StationaryProblem p = problem_from(config_json);
          const auto s = fixed_point_solve(p, RadialField::zeros(p.grid, true));
          const auto cert = certify(p, s);
          py::dict d;
          d["lambda_min"] = cert.lambda_min;
          d["stable"] = cert.stable;
          d["eigenvector"] = to_numpy(cert.eigenvector);
          return d;
        },
        py::arg("config_json"));

  m.def("scalar_mu_roots",
        [](double alpha, double beta, double gamma, double c) {
          std::vector<double> out;
          for (const auto& r : scalar_mu_roots(DiffusionCoefficient::rational(alpha, beta, gamma, -0.5, 10.0), c)) {
            out.push_back(r.mu);
          }
          return out;
        },
        py::arg("alpha"), py::arg("beta"), py::arg("gamma"), py::arg("c"),
        "Roots of mu a(mu) = c for the rational law on [-0.5, 10].");

  m.def("staircase_breakpoints",
        [](double c_min, double c_max, double a0, int n1) { return staircase_builder(c_min, c_max, a0, n1).breakpoints; },
        py::arg("c_min"), py::arg("c_max"), py::arg("a0") = 1.0, py::arg("n1") = 3);

  m.def("moser_exponents",
        [](int n, double p, double r) {
          const MoserExponents e = moser_exponents(n, p, r);
          return py::dict(py::arg("q") = e.q, py::arg("sigma") = e.sigma, py::arg("beta") = e.beta,
                          py::arg("rho") = e.rho, py::arg("delta") = e.delta, py::arg("alpha") = e.alpha,
                          py::arg("theta") = e.theta);
        },
        py::arg("n"), py::arg("p"), py::arg("r"));

  m.def("run",
        [](const std::string& config_json, const std::filesystem::path& out, int workers, bool strict) {
          const RunConfig config = parse_config(config_json, strict);
          RunOutcome o;
          {
            py::gil_scoped_release release;
            o = run_mode(config, out, workers);
          }
          return py::make_tuple(o.exit_code, o.error);
        },
        py::arg("config_json"), py::arg("out"), py::arg("workers") = 1, py::arg("strict") = true,
        "Runs the configured mode into `out`; returns (exit_code, error).");

  m.def("manifest_consistent",
        [](const std::filesystem::path& path) { return manifest_consistent(path); }, py::arg("path"));

  m.attr("__version__") = kArtifactVersion;
}
