#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "nlrad/errors.hpp"
#include "nlrad/manifest.hpp"
#include "nlrad/runner.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw nlrad::ConfigError(path + ": cannot open config");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int report(const nlrad::RunOutcome& o) {
  std::cout << "output: " << o.directory.string() << '\n';
  if (o.exit_code != nlrad::kExitOk) std::cerr << "error: " << o.error << '\n';
  return o.exit_code;
}

/// Config failures still leave a manifest behind.
int config_failure(const std::string& out, const std::string& mode, const std::exception& e) {
  std::cerr << "config error: " << e.what() << '\n';
  try {
    nlrad::ArtifactSink sink(out.empty() ? "out" : out);
    nlrad::ManifestInfo info;
    info.mode = mode;
    info.status = "error";
    info.exit_code = nlrad::kExitConfig;
    info.error = e.what();
    nlrad::write_manifest(sink, info);
  } catch (const std::exception& inner) {
    std::cerr << "manifest not written: " << inner.what() << '\n';
  }
  return nlrad::kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial solver for nonlocal diffusion problems in a ball"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out;
  int workers = 1;
  std::optional<std::uint64_t> seed;
  bool strict = true;
  app.add_option("--out", out, "Output directory (default: output.directory of the config)");
  app.add_option("--workers", workers, "Concurrent sweep entries")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Override run.seed");
  app.add_flag("--strict,!--lenient", strict, "Reject unknown config keys (default)");

  std::string config_path;
  auto* run = app.add_subcommand("run", "Execute the mode named in a config");
  run->add_option("config", config_path, "JSON config")->required();
  auto* sweep = app.add_subcommand("sweep", "Execute the cross product of the config's sweep axes");
  sweep->add_option("config", config_path, "JSON config")->required();
  auto* verify = app.add_subcommand("verify", "Run the built-in property suite");

  CLI11_PARSE(app, argc, argv);

  if (verify->parsed()) {
    nlrad::VerifyOptions options;
    if (seed) options.seed = *seed;
    return report(nlrad::run_verify_suite(out.empty() ? "verify_out" : out, options));
  }

  nlrad::RunConfig config;
  const std::string mode = sweep->parsed() ? "sweep" : "run";
  try {
    config = nlrad::parse_config(slurp(config_path), strict);
    if (seed) config.run.seed = *seed;
    if (sweep->parsed()) config.run.mode = nlrad::RunMode::sweep;
  } catch (const nlrad::Error& e) {
    return config_failure(out, mode, e);
  }
  const std::string dir = out.empty() ? config.output.directory : out;
  return report(nlrad::run_mode(config, dir, workers));
}
