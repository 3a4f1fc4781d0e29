#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nlrad/manifest.hpp"

namespace nlrad {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // key numbers, ';'-separated
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t mc_samples = 1'000'000;
  int mc_triples = 50;
  int r_steps = 64;
};

// Each check writes its evidence (CSV, plot data) into the sink.
CriterionResult verify_linear_oracle(ArtifactSink& sink, const VerifyOptions& options);
CriterionResult verify_kernel_geometry(ArtifactSink& sink, const VerifyOptions& options);
CriterionResult verify_scalar_reduction(ArtifactSink& sink, const VerifyOptions& options);
CriterionResult verify_multiplicity(ArtifactSink& sink, const VerifyOptions& options);
CriterionResult verify_comparison(ArtifactSink& sink, const VerifyOptions& options);
CriterionResult verify_stability(ArtifactSink& sink, const VerifyOptions& options);
CriterionResult verify_parabolic(ArtifactSink& sink, const VerifyOptions& options);
CriterionResult verify_moser(ArtifactSink& sink, const VerifyOptions& options);
CriterionResult verify_steady_state(ArtifactSink& sink, const VerifyOptions& options);

/// Criteria 1-9 in order; writes verify.csv with one row per criterion.
std::vector<CriterionResult> run_verify(ArtifactSink& sink, const VerifyOptions& options);

/// JSON array of the results, for the manifest.
std::string results_json(const std::vector<CriterionResult>& results);

}  // namespace nlrad
