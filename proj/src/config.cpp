#include "nlrad/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "nlrad/errors.hpp"

namespace nlrad {

using json = nlohmann::json;

namespace {

const char* type_name(const json& j) { return j.type_name(); }

/// Typed access to one JSON object, with the path used in messages.
class Node {
 public:
  Node(const json& j, std::string path, bool strict) : j_(j), path_(std::move(path)), strict_(strict) {
    if (!j_.is_object()) fail("", std::string("expected an object, got ") + type_name(j_));
  }

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    throw ConfigError(at(key) + ": " + msg);
  }

  std::string at(const std::string& key) const { return key.empty() ? path_ : path_ + "." + key; }

  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  void allow(std::initializer_list<const char*> keys) const {
    if (!strict_) return;
    std::set<std::string> ok(keys.begin(), keys.end());
    for (const auto& [k, v] : j_.items()) {
      if (!ok.count(k)) fail(k, "unknown key");
    }
  }

  double number(const std::string& key, double fallback) const {
    return has(key) ? as_number(j_.at(key), key) : fallback;
  }

  std::optional<double> optional_number(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return as_number(j_.at(key), key);
  }

  int integer(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_number_integer()) fail(key, std::string("expected an integer, got ") + type_name(v));
    return v.get<int>();
  }

  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      fail(key, std::string("expected a nonnegative integer, got ") + type_name(v));
    }
    return v.get<std::uint64_t>();
  }

  bool boolean(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_boolean()) fail(key, std::string("expected a boolean, got ") + type_name(v));
    return v.get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_string()) fail(key, std::string("expected a string, got ") + type_name(v));
    return v.get<std::string>();
  }

  std::vector<double> numbers(const std::string& key) const {
    const json& v = j_.at(key);
    if (!v.is_array()) fail(key, std::string("expected an array, got ") + type_name(v));
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_number(v[i], key + "[" + std::to_string(i) + "]"));
    return out;
  }

  std::vector<std::pair<double, double>> pairs(const std::string& key) const {
    const json& v = j_.at(key);
    if (!v.is_array()) fail(key, std::string("expected an array of pairs, got ") + type_name(v));
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string k = key + "[" + std::to_string(i) + "]";
      if (!v[i].is_array() || v[i].size() != 2) fail(k, "expected a [x, y] pair");
      out.emplace_back(as_number(v[i][0], k + "[0]"), as_number(v[i][1], k + "[1]"));
    }
    return out;
  }

  Node child(const std::string& key) const { return Node(j_.at(key), at(key), strict_); }
  const json& raw(const std::string& key) const { return j_.at(key); }
  bool strict() const { return strict_; }

 private:
  double as_number(const json& v, const std::string& key) const {
    if (!v.is_number()) fail(key, std::string("expected a number, got ") + type_name(v));
    return v.get<double>();
  }

  const json& j_;
  std::string path_;
  bool strict_;
};

RunMode parse_mode(const std::string& s, const Node& node, const std::string& key) {
  for (RunMode m : {RunMode::stationary, RunMode::pd_roots, RunMode::branch, RunMode::parabolic,
                    RunMode::sweep, RunMode::verify}) {
    if (to_string(m) == s) return m;
  }
  node.fail(key, "unknown mode '" + s + "'");
}

FieldSpec parse_field(const json& j, const std::string& path, bool strict) {
  if (j.is_number()) return FieldSpec::constant_of(j.get<double>());
  Node n(j, path, strict);
  const std::string kind = n.string("kind", "constant");
  FieldSpec s;
  if (kind == "constant") {
    n.allow({"kind", "value"});
    s.kind = FieldSpec::Kind::constant;
    if (!n.has("value")) n.fail("value", "missing");
    s.value = n.number("value", 0.0);
  } else if (kind == "polynomial") {
    n.allow({"kind", "coefficients"});
    s.kind = FieldSpec::Kind::polynomial;
    if (!n.has("coefficients")) n.fail("coefficients", "missing");
    s.coefficients = n.numbers("coefficients");
  } else if (kind == "tabulated") {
    n.allow({"kind", "points"});
    s.kind = FieldSpec::Kind::tabulated;
    if (!n.has("points")) n.fail("points", "missing");
    s.points = n.pairs("points");
    if (s.points.empty()) n.fail("points", "needs at least one point");
  } else {
    n.fail("kind", "unknown field kind '" + kind + "'");
  }
  return s;
}

CoefficientSpec parse_coefficient(const json& j, const std::string& path, bool strict) {
  Node n(j, path, strict);
  const std::string kind = n.string("kind", "constant");
  CoefficientSpec s;
  if (kind == "constant") {
    n.allow({"kind", "value"});
    s.kind = CoefficientSpec::Kind::constant;
    s.value = n.number("value", 1.0);
  } else if (kind == "rational") {
    n.allow({"kind", "alpha", "beta", "gamma", "domain"});
    s.kind = CoefficientSpec::Kind::rational;
    s.alpha = n.number("alpha", 1.0);
    s.beta = n.number("beta", 1.0);
    s.gamma = n.number("gamma", 0.0);
    if (n.has("domain")) {
      const auto d = n.numbers("domain");
      if (d.size() != 2) n.fail("domain", "expected [lo, hi]");
      s.domain = {d[0], d[1]};
    }
  } else if (kind == "piecewise_linear" || kind == "tabulated") {
    n.allow({"kind", "points"});
    s.kind = kind == "tabulated" ? CoefficientSpec::Kind::tabulated
                                 : CoefficientSpec::Kind::piecewise_linear;
    if (!n.has("points")) n.fail("points", "missing");
    s.points = n.pairs("points");
  } else if (kind == "staircase") {
    n.allow({"kind", "n1", "a0", "fit", "c_max_factor", "c_min", "c_max"});
    s.kind = CoefficientSpec::Kind::staircase;
    s.n1 = n.integer("n1", 3);
    s.a0 = n.number("a0", 1.0);
    s.fit = n.boolean("fit", true);
    s.c_max_factor = n.number("c_max_factor", 2.0);
    s.c_min = n.optional_number("c_min");
    s.c_max = n.optional_number("c_max");
    if (!s.fit && (!s.c_min || !s.c_max)) n.fail("", "staircase without fit needs c_min and c_max");
  } else {
    n.fail("kind", "unknown coefficient kind '" + kind + "'");
  }
  return s;
}

json emit_field(const FieldSpec& s) {
  json j;
  j["kind"] = to_string(s.kind);
  switch (s.kind) {
    case FieldSpec::Kind::constant: j["value"] = s.value; break;
    case FieldSpec::Kind::polynomial: j["coefficients"] = s.coefficients; break;
    case FieldSpec::Kind::tabulated: {
      json pts = json::array();
      for (const auto& [x, y] : s.points) pts.push_back({x, y});
      j["points"] = pts;
      break;
    }
  }
  return j;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json emit_coefficient(const CoefficientSpec& s) {
  json j;
  j["kind"] = to_string(s.kind);
  switch (s.kind) {
    case CoefficientSpec::Kind::constant:
      j["value"] = s.value;
      break;
    case CoefficientSpec::Kind::rational:
      j["alpha"] = s.alpha;
      j["beta"] = s.beta;
      j["gamma"] = s.gamma;
      j["domain"] = {s.domain.first, s.domain.second};
      break;
    case CoefficientSpec::Kind::piecewise_linear:
    case CoefficientSpec::Kind::tabulated: {
      json pts = json::array();
      for (const auto& [x, y] : s.points) pts.push_back({x, y});
      j["points"] = pts;
      break;
    }
    case CoefficientSpec::Kind::staircase:
      j["n1"] = s.n1;
      j["a0"] = s.a0;
      j["fit"] = s.fit;
      j["c_max_factor"] = s.c_max_factor;
      j["c_min"] = optional_json(s.c_min);
      j["c_max"] = optional_json(s.c_max);
      break;
  }
  return j;
}

void check_nonnegative(const FieldSpec& spec, const ProblemBlock& p, const std::string& path) {
  const RadialGrid grid(p.n, p.R, p.N);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = spec.eval(grid.node(i));
    if (!(v >= 0.0)) {
      throw ConfigError(path + ": value " + std::to_string(v) + " at rho = " +
                        std::to_string(grid.node(i)) +
                        " is negative; the problem requires f >= 0 and g >= 0 a.e. in the ball");
    }
  }
}

}  // namespace

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::stationary: return "stationary";
    case RunMode::pd_roots: return "pd_roots";
    case RunMode::branch: return "branch";
    case RunMode::parabolic: return "parabolic";
    case RunMode::sweep: return "sweep";
    case RunMode::verify: return "verify";
  }
  return "unknown";
}

RunConfig parse_config(const std::string& text, bool strict) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  Node top(root, "$", strict);
  top.allow({"problem", "run", "constants", "output"});
  RunConfig cfg;

  if (!top.has("problem")) top.fail("problem", "missing");
  {
    Node p = top.child("problem");
    p.allow({"n", "R", "N", "r", "f", "g", "u0", "a"});
    auto& pb = cfg.problem;
    pb.n = p.integer("n", 3);
    pb.R = p.number("R", 1.0);
    pb.N = p.integer("N", 256);
    pb.r = p.optional_number("r");
    if (pb.n < 1 || pb.n > 3) p.fail("n", "dimension must be 1, 2 or 3");
    if (!(pb.R > 0.0)) p.fail("R", "radius must be positive");
    if (pb.N < 8) p.fail("N", "grid needs at least 8 cells");
    if (pb.r && (*pb.r < 0.0 || *pb.r > 2.0 * pb.R)) p.fail("r", "must lie in [0, 2R]");
    if (p.has("f")) pb.f = parse_field(p.raw("f"), p.at("f"), strict);
    if (p.has("g")) pb.g = parse_field(p.raw("g"), p.at("g"), strict);
    if (p.has("u0")) pb.u0 = parse_field(p.raw("u0"), p.at("u0"), strict);
    if (p.has("a")) pb.a = parse_coefficient(p.raw("a"), p.at("a"), strict);
    check_nonnegative(pb.f, pb, p.at("f"));
    check_nonnegative(pb.g, pb, p.at("g"));
  }

  if (top.has("run")) {
    Node r = top.child("run");
    r.allow({"mode", "tol", "max_iter", "damping", "dt", "T", "stride", "r_steps", "stability",
             "seed", "sweep"});
    auto& rb = cfg.run;
    rb.mode = parse_mode(r.string("mode", "stationary"), r, "mode");
    rb.tol = r.number("tol", 1e-10);
    rb.max_iter = r.integer("max_iter", 500);
    rb.damping = r.number("damping", 1.0);
    rb.dt = r.optional_number("dt");
    rb.T = r.number("T", 1.0);
    rb.stride = r.integer("stride", 100);
    rb.r_steps = r.integer("r_steps", 64);
    rb.stability = r.boolean("stability", true);
    rb.seed = r.unsigned_integer("seed", 1);
    if (!(rb.tol > 0.0)) r.fail("tol", "must be positive");
    if (rb.max_iter < 1) r.fail("max_iter", "must be >= 1");
    if (!(rb.damping > 0.0 && rb.damping <= 1.0)) r.fail("damping", "must lie in (0, 1]");
    if (rb.dt && !(*rb.dt > 0.0)) r.fail("dt", "must be positive");
    if (!(rb.T > 0.0)) r.fail("T", "must be positive");
    if (rb.stride < 1) r.fail("stride", "must be >= 1");
    if (rb.r_steps < 1) r.fail("r_steps", "must be >= 1");
    if (r.has("sweep")) {
      Node s = r.child("sweep");
      s.allow({"mode", "axes"});
      rb.sweep_mode = parse_mode(s.string("mode", "stationary"), s, "mode");
      if (rb.sweep_mode == RunMode::sweep) s.fail("mode", "a sweep cannot nest another sweep");
      if (s.has("axes")) {
        const json& axes = s.raw("axes");
        if (!axes.is_array()) s.fail("axes", "expected an array");
        for (std::size_t i = 0; i < axes.size(); ++i) {
          Node ax(axes[i], s.at("axes[" + std::to_string(i) + "]"), strict);
          ax.allow({"path", "values"});
          SweepAxis a;
          a.path = ax.string("path", "");
          if (a.path.empty() || a.path.front() != '/') ax.fail("path", "expected a JSON pointer");
          if (!ax.has("values")) ax.fail("values", "missing");
          a.values = ax.numbers("values");
          rb.sweep.push_back(std::move(a));
        }
      }
    }
  }

  if (top.has("constants")) {
    Node c = top.child("constants");
    c.allow({"C1", "K_c", "K_c_certified", "eps", "mu_max", "t0"});
    auto& cb = cfg.constants;
    cb.C1 = c.optional_number("C1");
    cb.K_c = c.optional_number("K_c");
    cb.K_c_certified = c.boolean("K_c_certified", false);
    cb.eps = c.number("eps", 0.01);
    cb.mu_max = c.optional_number("mu_max");
    cb.t0 = c.optional_number("t0");
    if (!(cb.eps > 0.0)) c.fail("eps", "must be positive");
    if (cb.K_c_certified && !cb.K_c) c.fail("K_c", "a certified K_c needs a value");
  }

  if (top.has("output")) {
    Node o = top.child("output");
    o.allow({"directory", "formats", "profiles"});
    auto& ob = cfg.output;
    ob.directory = o.string("directory", "out");
    ob.profiles = o.boolean("profiles", false);
    if (o.has("formats")) {
      const json& f = o.raw("formats");
      if (!f.is_array()) o.fail("formats", "expected an array of strings");
      ob.csv = ob.plot_data = false;
      for (const auto& e : f) {
        if (!e.is_string()) o.fail("formats", "expected an array of strings");
        const auto s = e.get<std::string>();
        if (s == "csv") {
          ob.csv = true;
        } else if (s == "plot") {
          ob.plot_data = true;
        } else {
          o.fail("formats", "unknown format '" + s + "'");
        }
      }
    }
  }
  return cfg;
}

std::string emit_config(const RunConfig& cfg) {
  json j;
  const auto& p = cfg.problem;
  j["problem"] = {{"n", p.n},
                  {"R", p.R},
                  {"N", p.N},
                  {"r", optional_json(p.r)},
                  {"f", emit_field(p.f)},
                  {"g", emit_field(p.g)},
                  {"u0", emit_field(p.u0)},
                  {"a", emit_coefficient(p.a)}};
  const auto& r = cfg.run;
  json axes = json::array();
  for (const auto& a : r.sweep) axes.push_back({{"path", a.path}, {"values", a.values}});
  j["run"] = {{"mode", to_string(r.mode)},
              {"tol", r.tol},
              {"max_iter", r.max_iter},
              {"damping", r.damping},
              {"dt", optional_json(r.dt)},
              {"T", r.T},
              {"stride", r.stride},
              {"r_steps", r.r_steps},
              {"stability", r.stability},
              {"seed", r.seed},
              {"sweep", {{"mode", to_string(r.sweep_mode)}, {"axes", axes}}}};
  const auto& c = cfg.constants;
  j["constants"] = {{"C1", optional_json(c.C1)},         {"K_c", optional_json(c.K_c)},
                    {"K_c_certified", c.K_c_certified}, {"eps", c.eps},
                    {"mu_max", optional_json(c.mu_max)}, {"t0", optional_json(c.t0)}};
  json formats = json::array();
  if (cfg.output.csv) formats.push_back("csv");
  if (cfg.output.plot_data) formats.push_back("plot");
  j["output"] = {{"directory", cfg.output.directory},
                 {"formats", formats},
                 {"profiles", cfg.output.profiles}};
  return j.dump(2) + "\n";
}

RunConfig substitute(const RunConfig& config, const std::string& pointer, double value) {
  json j = json::parse(emit_config(config));
  try {
    const json::json_pointer ptr(pointer);
    if (!j.contains(ptr)) throw ConfigError("sweep path " + pointer + " does not exist");
    json& slot = j[ptr];
    if (slot.is_number_integer()) {
      if (value != std::floor(value)) throw ConfigError("sweep path " + pointer + " needs integers");
      slot = static_cast<long long>(value);
    } else if (slot.is_number() || slot.is_null()) {
      slot = value;
    } else {
      throw ConfigError("sweep path " + pointer + " is not numeric");
    }
  } catch (const json::exception& e) {
    throw ConfigError("bad sweep path " + pointer + ": " + e.what());
  }
  return parse_config(j.dump(), true);
}

double resolved_r(const RunConfig& config) {
  return config.problem.r.value_or(2.0 * config.problem.R);
}

StationaryProblem build_problem(const RunConfig& config) {
  const auto& p = config.problem;
  const RadialGrid grid(p.n, p.R, p.N);
  const RadialField f = p.f.sample(grid);
  const RadialField g = p.g.sample(grid);
  const double r = resolved_r(config);
  std::optional<std::pair<double, double>> I_r;
  if (p.a.kind == CoefficientSpec::Kind::staircase && p.a.fit) {
    // I_r does not depend on a; any admissible coefficient gives the same kernel image.
    const StationaryProblem probe = make_stationary_problem(DiffusionCoefficient::constant(1.0), f, g, r);
    I_r = interval_I(probe);
  }
  return make_stationary_problem(build_coefficient(p.a, I_r), f, g, r);
}

}  // namespace nlrad
