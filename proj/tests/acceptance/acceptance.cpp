// Runs the property suite twice and prints one line per acceptance criterion.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "nlrad/manifest.hpp"
#include "nlrad/runner.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

json load(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

std::map<std::string, std::string> inventory(const json& manifest) {
  std::map<std::string, std::string> out;
  for (const auto& f : manifest.at("files")) out[f.at("path")] = f.at("sha256");
  return out;
}

/// Both runs list the same files with the same digests, every digest matches
/// the bytes on disk, and the manifests agree apart from the wall clock.
bool deterministic(const fs::path& a, const fs::path& b, std::string* detail) {
  std::string problem;
  if (!nlrad::manifest_consistent(a / "manifest.json", &problem) ||
      !nlrad::manifest_consistent(b / "manifest.json", &problem)) {
    *detail = problem;
    return false;
  }
  json ma = load(a / "manifest.json"), mb = load(b / "manifest.json");
  const auto ia = inventory(ma), ib = inventory(mb);
  if (ia != ib) {
    *detail = "file inventories or digests differ";
    return false;
  }
  for (const auto& [name, digest] : ia) {
    if (nlrad::sha256_file(a / name) != nlrad::sha256_file(b / name)) {
      *detail = "bytes differ in " + name;
      return false;
    }
  }
  ma.erase("wall_clock");
  mb.erase("wall_clock");
  if (ma != mb) {
    *detail = "manifests differ beyond the wall clock";
    return false;
  }
  *detail = std::to_string(ia.size()) + " files identical";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite"};
  std::string out = "acceptance_runs";
  std::uint64_t seed = 1;
  app.add_option("--out", out, "Scratch directory");
  app.add_option("--seed", seed, "Monte Carlo seed");
  CLI11_PARSE(app, argc, argv);

  const fs::path root(out);
  fs::remove_all(root);
  nlrad::VerifyOptions options;
  options.seed = seed;

  const auto first = nlrad::run_verify_suite(root / "run_a", options);
  const auto second = nlrad::run_verify_suite(root / "run_b", options);

  int failed = 0;
  const json results = load(root / "run_a" / "manifest.json").at("results");
  const json& criteria = results.contains("criteria") ? results.at("criteria") : json::array();
  for (const auto& c : criteria) {
    const bool ok = c.at("passed").get<bool>();
    failed += ok ? 0 : 1;
    std::printf("%s criterion %d (%s): %s\n", ok ? "PASS" : "FAIL", c.at("criterion").get<int>(),
                c.at("name").get<std::string>().c_str(), c.at("detail").get<std::string>().c_str());
  }
  if (criteria.size() != 9) {
    ++failed;
    std::printf("FAIL suite: %s\n", first.error.c_str());
  }

  std::string detail;
  const bool det = deterministic(root / "run_a", root / "run_b", &detail) &&
                   first.exit_code == second.exit_code;
  failed += det ? 0 : 1;
  std::printf("%s criterion 10 (determinism and manifests): %s\n", det ? "PASS" : "FAIL", detail.c_str());

  std::printf("%s: %d of 10 criteria failed\n", failed ? "FAILED" : "OK", failed);
  return failed ? 1 : 0;
}
