#include "pegsim/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <span>
#include <sstream>
#include <string_view>
#include <utility>

#include <json.hpp>

#include "pegsim/errors.hpp"

namespace pegsim {
namespace {

using nlohmann::json;

constexpr std::pair<const char*, double> kLength[] = {{"m", 1.0}, {"mm", 1e-3}};
constexpr std::pair<const char*, double> kAngle[] = {
    {"rad", 1.0}, {"deg", std::numbers::pi / 180.0}};
constexpr std::pair<const char*, double> kTime[] = {{"s", 1.0}, {"ms", 1e-3}};
constexpr std::pair<const char*, double> kSpeed[] = {{"m/s", 1.0}, {"mm/s", 1e-3}};
constexpr std::pair<const char*, double> kForce[] = {{"N", 1.0}};
constexpr std::pair<const char*, double> kMoment[] = {{"N*m", 1.0}};
constexpr std::pair<const char*, double> kPressure[] = {
    {"Pa", 1.0}, {"MPa", 1e6}, {"GPa", 1e9}};

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

// The schema is closed: any key outside `allowed` is an error, named so a
// typo never silently falls back to a default.
void reject_unknown(const json& j, const std::string& path,
                    std::initializer_list<std::string_view> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (std::string_view a : allowed) {
      if (it.key() == a) {
        known = true;
        break;
      }
    }
    if (!known) fail(path, "unknown key '" + it.key() + "'");
  }
}

double quantity(const json& j, const std::string& path,
                std::span<const std::pair<const char*, double>> units,
                const char* dimension) {
  require_object(j, path);
  reject_unknown(j, path, {"value", "unit"});
  if (!j.contains("value") || !j.contains("unit"))
    fail(path, "a dimensioned quantity needs both 'value' and 'unit'");
  const json& v = j["value"];
  if (!v.is_number()) fail(path + ".value", "expected a number");
  const json& u = j["unit"];
  if (!u.is_string()) fail(path + ".unit", "expected a string");
  const std::string unit = u.get<std::string>();
  for (const auto& [name, scale] : units) {
    if (unit == name) return v.get<double>() * scale;
  }
  std::string expected;
  for (const auto& [name, scale] : units) {
    if (!expected.empty()) expected += ", ";
    expected += name;
  }
  fail(path + ".unit",
       "'" + unit + "' is not a " + dimension + " unit (accepted: " + expected + ")");
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a plain number");
  return j.get<double>();
}

long integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long>();
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

bool boolean(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected true or false");
  return j.get<bool>();
}

// Runs `f` on obj[key] when present; missing optional keys keep defaults.
template <typename F>
void with(const json& obj, const char* key, F&& f) {
  if (obj.contains(key)) f(obj[key]);
}

void parse_geometry(const json& j, const std::string& path, Geometry& g) {
  require_object(j, path);
  reject_unknown(j, path,
                 {"nominal_radius", "hole_offset", "peg_offset", "depth",
                  "bottom_thickness", "stiffness", "friction"});
  for (const char* key : {"nominal_radius", "hole_offset", "peg_offset"}) {
    if (!j.contains(key)) fail(path, std::string("missing required key '") + key + "'");
  }
  const double nominal = quantity(j["nominal_radius"], path + ".nominal_radius", kLength, "length");
  g.R = nominal + quantity(j["hole_offset"], path + ".hole_offset", kLength, "length");
  g.r = nominal + quantity(j["peg_offset"], path + ".peg_offset", kLength, "length");
  with(j, "depth", [&](const json& v) { g.L = quantity(v, path + ".depth", kLength, "length"); });
  with(j, "bottom_thickness",
       [&](const json& v) { g.H = quantity(v, path + ".bottom_thickness", kLength, "length"); });
  with(j, "stiffness",
       [&](const json& v) { g.k = quantity(v, path + ".stiffness", kPressure, "pressure"); });
  with(j, "friction", [&](const json& v) { g.mu = number(v, path + ".friction"); });
}

void parse_deviation(const json& j, const std::string& path, FeatureVector& x) {
  require_object(j, path);
  reject_unknown(j, path, {"d_x", "d_y", "theta_x", "theta_y"});
  with(j, "d_x", [&](const json& v) { x.d_x = quantity(v, path + ".d_x", kLength, "length"); });
  with(j, "d_y", [&](const json& v) { x.d_y = quantity(v, path + ".d_y", kLength, "length"); });
  with(j, "theta_x",
       [&](const json& v) { x.theta_x = quantity(v, path + ".theta_x", kAngle, "angle"); });
  with(j, "theta_y",
       [&](const json& v) { x.theta_y = quantity(v, path + ".theta_y", kAngle, "angle"); });
}

void parse_compliance(const json& j, const std::string& path, ComplianceParams& p) {
  require_object(j, path);
  if (j.contains("set")) {
    reject_unknown(j, path, {"set"});
    const std::string label = text(j["set"], path + ".set");
    try {
      p = ComplianceParams::preset(label);
    } catch (const ConfigError& e) {
      fail(path + ".set", e.what());
    }
    return;
  }
  constexpr const char* kGains[] = {"M_dp", "D_dp", "K_dp", "M_do", "D_do",
                                    "K_do", "M_dl", "D_dl", "K_dl"};
  reject_unknown(j, path,
                 {"M_dp", "D_dp", "K_dp", "M_do", "D_do", "K_do", "M_dl", "D_dl", "K_dl"});
  for (const char* key : kGains) {
    if (!j.contains(key))
      fail(path, std::string("either give 'set' or all nine gains; missing '") + key + "'");
  }
  p.M_dp = number(j["M_dp"], path + ".M_dp");
  p.D_dp = number(j["D_dp"], path + ".D_dp");
  p.K_dp = number(j["K_dp"], path + ".K_dp");
  p.M_do = number(j["M_do"], path + ".M_do");
  p.D_do = number(j["D_do"], path + ".D_do");
  p.K_do = number(j["K_do"], path + ".K_do");
  p.M_dl = number(j["M_dl"], path + ".M_dl");
  p.D_dl = number(j["D_dl"], path + ".D_dl");
  p.K_dl = number(j["K_dl"], path + ".K_dl");
}

ControllerKind parse_controller(const json& j, const std::string& path) {
  const std::string s = text(j, path);
  if (s == "fbcc") return ControllerKind::fbcc;
  if (s == "admittance") return ControllerKind::admittance;
  if (s == "open_loop") return ControllerKind::open_loop;
  fail(path, "'" + s + "' is not a controller (fbcc, admittance, open_loop)");
}

void parse_quadrature(const json& j, const std::string& path, QuadratureSpec& q) {
  require_object(j, path);
  reject_unknown(j, path, {"n_s", "n_alpha", "rule"});
  with(j, "n_s", [&](const json& v) { q.n_s = static_cast<int>(integer(v, path + ".n_s")); });
  with(j, "n_alpha",
       [&](const json& v) { q.n_alpha = static_cast<int>(integer(v, path + ".n_alpha")); });
  with(j, "rule", [&](const json& v) {
    const std::string s = text(v, path + ".rule");
    if (s == "midpoint")
      q.rule = QuadratureRule::midpoint;
    else if (s == "trapezoid")
      q.rule = QuadratureRule::trapezoid;
    else
      fail(path + ".rule", "'" + s + "' is not a rule (midpoint, trapezoid)");
  });
}

void parse_top_level(const json& root, const std::string& name, LoadedConfig& cfg) {
  require_object(root, name);
  reject_unknown(root, name,
                 {"geometry", "initial_deviation", "target_depth", "compliance", "controller",
                  "dt", "duration", "v_feed", "quadrature", "seed", "tolerances", "x_d_limit",
                  "limits", "depth_tolerance", "workspace", "output", "sweep", "map"});
  Scenario& sc = cfg.scenario;

  if (!root.contains("geometry")) fail(name, "missing required key 'geometry'");
  parse_geometry(root["geometry"], name + ".geometry", sc.geometry);
  sc.target_depth = sc.geometry.L;

  with(root, "initial_deviation", [&](const json& v) {
    parse_deviation(v, name + ".initial_deviation", sc.initial_deviation);
  });
  with(root, "target_depth", [&](const json& v) {
    sc.target_depth = quantity(v, name + ".target_depth", kLength, "length");
  });
  with(root, "compliance",
       [&](const json& v) { parse_compliance(v, name + ".compliance", sc.params); });
  with(root, "controller",
       [&](const json& v) { sc.controller = parse_controller(v, name + ".controller"); });
  with(root, "dt", [&](const json& v) { sc.dt = quantity(v, name + ".dt", kTime, "time"); });
  with(root, "duration",
       [&](const json& v) { sc.duration = quantity(v, name + ".duration", kTime, "time"); });
  with(root, "v_feed",
       [&](const json& v) { sc.v_feed = quantity(v, name + ".v_feed", kSpeed, "speed"); });
  with(root, "quadrature",
       [&](const json& v) { parse_quadrature(v, name + ".quadrature", sc.quadrature); });
  with(root, "seed", [&](const json& v) {
    if (!v.is_number_unsigned()) fail(name + ".seed", "expected a non-negative integer");
    sc.seed = v.get<std::uint64_t>();
  });
  with(root, "tolerances", [&](const json& v) {
    const std::string path = name + ".tolerances";
    require_object(v, path);
    reject_unknown(v, path, {"force", "angle"});
    with(v, "force", [&](const json& w) {
      sc.tol.eps_force = quantity(w, path + ".force", kForce, "force");
    });
    with(v, "angle", [&](const json& w) {
      sc.tol.eps_angle = quantity(w, path + ".angle", kAngle, "angle");
    });
  });
  with(root, "x_d_limit", [&](const json& v) {
    const std::string path = name + ".x_d_limit";
    require_object(v, path);
    reject_unknown(v, path, {"position", "angle"});
    double pos = sc.x_d_limit(0);
    double ang = sc.x_d_limit(3);
    with(v, "position",
         [&](const json& w) { pos = quantity(w, path + ".position", kLength, "length"); });
    with(v, "angle", [&](const json& w) { ang = quantity(w, path + ".angle", kAngle, "angle"); });
    sc.x_d_limit << pos, pos, pos, ang, ang;
  });
  with(root, "limits", [&](const json& v) {
    const std::string path = name + ".limits";
    require_object(v, path);
    reject_unknown(v, path, {"force", "moment"});
    with(v, "force",
         [&](const json& w) { sc.F_limit = quantity(w, path + ".force", kForce, "force"); });
    with(v, "moment",
         [&](const json& w) { sc.M_limit = quantity(w, path + ".moment", kMoment, "moment"); });
  });
  with(root, "depth_tolerance", [&](const json& v) {
    sc.depth_tolerance = quantity(v, name + ".depth_tolerance", kLength, "length");
  });
  with(root, "workspace", [&](const json& v) {
    const std::string path = name + ".workspace";
    require_object(v, path);
    reject_unknown(v, path, {"position", "angle"});
    with(v, "position", [&](const json& w) {
      sc.workspace_pos = quantity(w, path + ".position", kLength, "length");
    });
    with(v, "angle", [&](const json& w) {
      sc.workspace_ang = quantity(w, path + ".angle", kAngle, "angle");
    });
  });
  with(root, "output", [&](const json& v) {
    const std::string path = name + ".output";
    require_object(v, path);
    reject_unknown(v, path, {"dir", "plots"});
    with(v, "dir", [&](const json& w) { cfg.output.dir = text(w, path + ".dir"); });
    with(v, "plots", [&](const json& w) { cfg.output.plots = boolean(w, path + ".plots"); });
  });
  with(root, "sweep", [&](const json& v) {
    const std::string path = name + ".sweep";
    require_object(v, path);
    reject_unknown(v, path, {"n", "position_range", "angle_range"});
    with(v, "n",
         [&](const json& w) { cfg.sweep.n = static_cast<int>(integer(w, path + ".n")); });
    with(v, "position_range", [&](const json& w) {
      cfg.sweep.position_range = quantity(w, path + ".position_range", kLength, "length");
    });
    with(v, "angle_range", [&](const json& w) {
      cfg.sweep.angle_range = quantity(w, path + ".angle_range", kAngle, "angle");
    });
  });
  with(root, "map", [&](const json& v) {
    const std::string path = name + ".map";
    require_object(v, path);
    reject_unknown(v, path, {"l", "n_d", "n_theta", "d_range", "theta_range"});
    with(v, "l", [&](const json& w) { cfg.map.l = quantity(w, path + ".l", kLength, "length"); });
    with(v, "n_d",
         [&](const json& w) { cfg.map.n_d = static_cast<int>(integer(w, path + ".n_d")); });
    with(v, "n_theta", [&](const json& w) {
      cfg.map.n_theta = static_cast<int>(integer(w, path + ".n_theta"));
    });
    with(v, "d_range", [&](const json& w) {
      cfg.map.d_range = quantity(w, path + ".d_range", kLength, "length");
    });
    with(v, "theta_range", [&](const json& w) {
      cfg.map.theta_range = quantity(w, path + ".theta_range", kAngle, "angle");
    });
  });
}

}  // namespace

void MapSpec::validate() const {
  if (!(l > 0.0) || !std::isfinite(l)) throw ConfigError("map.l must be positive");
  if (n_d < 2 || n_theta < 2) throw ConfigError("map grid needs at least 2 samples per axis");
  if (!(d_range > 0.0) || !std::isfinite(d_range))
    throw ConfigError("map.d_range must be positive");
  if (!(theta_range > 0.0) || !(theta_range < std::numbers::pi / 2))
    throw ConfigError("map.theta_range must lie in (0, pi/2)");
}

namespace {

LoadedConfig parse_impl(const std::string& content, const std::string& name, bool check) {
  json root;
  try {
    root = json::parse(content);
  } catch (const json::parse_error& e) {
    throw ConfigError(name + ": invalid JSON: " + e.what());
  }
  LoadedConfig cfg;
  parse_top_level(root, name, cfg);
  if (!check) return cfg;
  // Semantic checks run here so a bad config fails at load, not mid-run.
  try {
    cfg.scenario.validate();
    cfg.map.validate();
    if (cfg.sweep.n < 1) throw DomainError("sweep needs at least one trial");
    if (cfg.sweep.position_range < 0.0 || cfg.sweep.angle_range < 0.0)
      throw DomainError("sweep ranges must be >= 0");
  } catch (const std::exception& e) {
    throw ConfigError(name + ": " + e.what());
  }
  return cfg;
}

std::string slurp(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config file '" + file.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

LoadedConfig parse_config(const std::string& content, const std::string& name) {
  return parse_impl(content, name, true);
}

LoadedConfig load_config(const std::filesystem::path& file) {
  return parse_impl(slurp(file), file.filename().string(), true);
}

LoadedConfig load_config_unchecked(const std::filesystem::path& file) {
  return parse_impl(slurp(file), file.filename().string(), false);
}

}  // namespace pegsim
