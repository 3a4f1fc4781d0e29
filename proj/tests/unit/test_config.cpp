#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "nlrad/config.hpp"
#include "nlrad/csv.hpp"
#include "nlrad/errors.hpp"
#include "nlrad/manifest.hpp"
#include "nlrad/runner.hpp"

using namespace nlrad;

namespace {

std::string message_of(const std::string& text, bool strict = true) {
  try {
    parse_config(text, strict);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("nlrad_unit_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("minimal config takes the defaults") {
  const RunConfig c = parse_config(R"({"problem": {"n": 3, "R": 1, "f": 1, "g": 1, "a": {"kind": "constant", "value": 1}},
                                       "run": {"mode": "stationary"}})");
  CHECK(c.problem.N == 256);
  CHECK(c.run.tol == 1e-10);
  CHECK(c.run.max_iter == 500);
  CHECK(resolved_r(c) == 2.0);
  CHECK(c.output.csv);
}

TEST_CASE("negative source is rejected citing the sign assumption") {
  const std::string msg = message_of(R"({"problem": {"f": {"kind": "polynomial", "coefficients": [1, -3]}}})");
  CHECK(msg.find("$.problem.f") != std::string::npos);
  CHECK(msg.find("f >= 0") != std::string::npos);
}

TEST_CASE("unknown keys and type errors carry the JSON path") {
  CHECK(message_of(R"({"problem": {"n": 3, "radius": 1}})").find("$.problem.radius: unknown key") != std::string::npos);
  CHECK(message_of(R"({"problem": {"n": 3, "radius": 1}})", false).empty());
  CHECK(message_of(R"({"problem": {"N": "many"}})").find("$.problem.N: expected an integer") != std::string::npos);
  CHECK(message_of(R"({"problem": {}, "run": {"mode": "fly"}})").find("$.run.mode") != std::string::npos);
  CHECK(message_of(R"({"problem": {"n": 4}})").find("$.problem.n") != std::string::npos);
  CHECK(message_of("{not json").find("not valid JSON") != std::string::npos);
  CHECK(message_of(R"({"run": {}})").find("$.problem: missing") != std::string::npos);
}

TEST_CASE("round trip on 20 configs") {
  const char* coefficients[] = {
      R"({"kind": "constant", "value": 2})",
      R"({"kind": "rational", "alpha": 1, "beta": 1, "gamma": 0.1})",
      R"({"kind": "piecewise_linear", "points": [[0, 2], [1, 1], [3, 0.5]]})",
      R"({"kind": "tabulated", "points": [[0, 2], [1, 1.5], [2, 1]]})",
      R"({"kind": "staircase", "n1": 5, "fit": false, "c_min": 0.1, "c_max": 0.4})"};
  const char* fields[] = {R"(1)", R"({"kind": "polynomial", "coefficients": [1, 0, 2]})",
                          R"({"kind": "tabulated", "points": [[0, 1], [1, 0.5]]})", R"(0.25)"};
  const char* modes[] = {"stationary", "pd_roots", "branch", "parabolic", "verify"};
  for (int k = 0; k < 20; ++k) {
    const std::string text = std::string(R"({"problem": {"n": )") + std::to_string(1 + k % 3) +
                             R"(, "N": )" + std::to_string(32 + k) + R"(, "r": )" + std::to_string(0.1 * (k % 10)) +
                             R"(, "f": )" + fields[k % 4] + R"(, "g": )" + fields[(k + 1) % 4] +
                             R"(, "a": )" + coefficients[k % 5] + R"(}, "run": {"mode": ")" + modes[k % 5] +
                             R"(", "seed": )" + std::to_string(k) + R"(, "dt": 0.001},
                               "constants": {"C1": 0.5, "eps": 0.02},
                               "output": {"formats": ["csv"], "directory": "o)" + std::to_string(k) + R"("}})";
    const RunConfig once = parse_config(text);
    const std::string emitted = emit_config(once);
    const RunConfig twice = parse_config(emitted);
    CHECK(once == twice);
    CHECK(emit_config(twice) == emitted);
  }
}

TEST_CASE("sweep substitution through a JSON pointer") {
  const RunConfig c = parse_config(R"({"problem": {"N": 64}})");
  CHECK(substitute(c, "/problem/r", 0.5).problem.r == 0.5);
  CHECK(substitute(c, "/problem/N", 32).problem.N == 32);
  CHECK_THROWS_AS(substitute(c, "/problem/N", 32.5), ConfigError);
  CHECK_THROWS_AS(substitute(c, "/problem/nothing", 1.0), ConfigError);
}

TEST_CASE("sha256 test vectors") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("number formatting is round-trip exact") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(2.0) == "2");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("run_mode writes a consistent manifest, also on failure") {
  const auto dir = scratch("ok");
  const RunConfig c = parse_config(R"({"problem": {"N": 32}, "run": {"mode": "stationary"}})");
  const RunOutcome o = run_mode(c, dir);
  CHECK(o.exit_code == kExitOk);
  CHECK(std::filesystem::exists(dir / "solution.csv"));
  CHECK(manifest_consistent(dir / "manifest.json"));

  const auto bad = scratch("bad");
  RunConfig d = parse_config(R"({"problem": {"N": 32, "r": 1}, "run": {"mode": "pd_roots"}})");
  const RunOutcome f = run_mode(d, bad);
  CHECK(f.exit_code == kExitConfig);
  CHECK(std::filesystem::exists(bad / "manifest.json"));

  const auto slow = scratch("slow");
  RunConfig e = parse_config(R"({"problem": {"N": 32, "a": {"kind": "rational"}}, "run": {"mode": "stationary", "max_iter": 1}})");
  CHECK(run_mode(e, slow).exit_code == kExitNumerical);
}

TEST_CASE("identical runs give identical bytes") {
  const RunConfig c = parse_config(R"({"problem": {"N": 32, "a": {"kind": "rational"}}, "run": {"mode": "branch", "r_steps": 8}})");
  const auto a = scratch("det_a"), b = scratch("det_b");
  run_mode(c, a);
  run_mode(c, b);
  CHECK(sha256_file(a / "branch.csv") == sha256_file(b / "branch.csv"));
}

TEST_CASE("sweep writes one manifest per entry") {
  const auto dir = scratch("sweep");
  const RunConfig c = parse_config(R"({"problem": {"N": 32}, "run": {"mode": "sweep",
      "sweep": {"mode": "stationary", "axes": [{"path": "/problem/r", "values": [0, 0.5, 1, 1.5, 2]}]}}})");
  const RunOutcome o = run_mode(c, dir, 3);
  CHECK(o.exit_code == kExitOk);
  int manifests = 0;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
    if (e.path().filename() == "manifest.json" && e.path().parent_path() != dir) ++manifests;
  }
  CHECK(manifests == 5);
}
