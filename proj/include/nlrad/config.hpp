#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nlrad/fields.hpp"
#include "nlrad/parabolic.hpp"
#include "nlrad/stationary.hpp"

namespace nlrad {

enum class RunMode { stationary, pd_roots, branch, parabolic, sweep, verify };

std::string to_string(RunMode mode);

struct ProblemBlock {
  int n = 3;
  double R = 1.0;
  int N = 256;
  std::optional<double> r;  // default d = 2R
  FieldSpec f = FieldSpec::constant_of(1.0);
  FieldSpec g = FieldSpec::constant_of(1.0);
  FieldSpec u0 = FieldSpec::constant_of(0.0);
  CoefficientSpec a;

  friend bool operator==(const ProblemBlock&, const ProblemBlock&) = default;
};

/// One swept parameter: a JSON pointer into the config and its values.
struct SweepAxis {
  std::string path;
  std::vector<double> values;

  friend bool operator==(const SweepAxis&, const SweepAxis&) = default;
};

struct RunBlock {
  RunMode mode = RunMode::stationary;
  double tol = 1e-10;
  int max_iter = 500;
  double damping = 1.0;
  std::optional<double> dt;  // default 1e-3 R^2 / m
  double T = 1.0;
  int stride = 100;
  int r_steps = 64;
  bool stability = true;
  std::uint64_t seed = 1;
  // sweep
  RunMode sweep_mode = RunMode::stationary;
  std::vector<SweepAxis> sweep;

  friend bool operator==(const RunBlock&, const RunBlock&) = default;
};

struct ConstantsBlock {
  std::optional<double> C1;   // default 1/sqrt(lambda_1)
  std::optional<double> K_c;  // default 1, report-only
  bool K_c_certified = false;
  double eps = 0.01;
  std::optional<double> mu_max;
  std::optional<double> t0;   // default T/4

  friend bool operator==(const ConstantsBlock&, const ConstantsBlock&) = default;
};

struct OutputBlock {
  std::string directory = "out";
  bool csv = true;
  bool plot_data = true;
  bool profiles = false;

  friend bool operator==(const OutputBlock&, const OutputBlock&) = default;
};

struct RunConfig {
  ProblemBlock problem;
  RunBlock run;
  ConstantsBlock constants;
  OutputBlock output;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses the JSON config format. Unknown keys are errors in strict mode;
/// type errors always are. Messages carry the JSON path of the culprit.
/// Throws ConfigError.
RunConfig parse_config(const std::string& text, bool strict = true);

/// Fully resolved JSON (every default written out); parse_config of the
/// result gives back an equal config.
std::string emit_config(const RunConfig& config);

/// The config with one numeric value replaced at a JSON pointer.
RunConfig substitute(const RunConfig& config, const std::string& pointer, double value);

/// Problem assembly: grid, sampled fields, kernel and the resolved
/// coefficient (a fitted staircase uses I_r at the configured r).
StationaryProblem build_problem(const RunConfig& config);

double resolved_r(const RunConfig& config);

}  // namespace nlrad
