#pragma once

#include <filesystem>
#include <string>

#include "nlrad/config.hpp"
#include "nlrad/verify.hpp"

namespace nlrad {

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitNumerical = 2, kExitProperty = 3 };

struct RunOutcome {
  int exit_code = kExitOk;
  std::string error;
  std::filesystem::path directory;
};

/// Maps a library exception to the CLI exit code.
int exit_code_for(const std::exception& e);

/// Executes config.run.mode into `directory` and always writes manifest.json
/// there, also on failure. Sweeps fan out over at most `workers` threads,
/// one subdirectory and manifest per entry.
RunOutcome run_mode(const RunConfig& config, const std::filesystem::path& directory, int workers = 1);

/// The built-in property suite; exit 3 when any criterion fails.
RunOutcome run_verify_suite(const std::filesystem::path& directory, const VerifyOptions& options);

}  // namespace nlrad
