#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pegsim/config.hpp"
#include "pegsim/csv.hpp"
#include "pegsim/errors.hpp"
#include "pegsim/svg.hpp"
#include "pegsim/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace pegsim;

namespace {

// Output directory precedence: PEGSIM_OUT env var, then --out, then the
// config's output.dir.
fs::path resolve_out(const std::string& cli_out, const OutputSpec& spec) {
  if (const char* env = std::getenv("PEGSIM_OUT"); env && *env) return fs::path(env);
  if (!cli_out.empty()) return fs::path(cli_out);
  return fs::path(spec.dir);
}

json to_json(const ResponseVector& F) {
  return json{{"F_x", F.F_x}, {"F_y", F.F_y}, {"F_z", F.F_z}, {"M_x", F.M_x}, {"M_y", F.M_y}};
}

json to_json(const FeatureVector& x) {
  return json{{"d_x", x.d_x},
              {"d_y", x.d_y},
              {"l", x.l},
              {"theta_x", x.theta_x},
              {"theta_y", x.theta_y}};
}

json to_json(const RunMetrics& m) {
  return json{{"success", m.success},
              {"abort_reason", m.abort_reason},
              {"end_time", m.end_time},
              {"settling_time", m.settling_time},  // -1 when never settled
              {"overshoot_theta_y", m.overshoot_theta_y},
              {"peak", to_json(m.peak)},
              {"terminal", to_json(m.terminal)},
              {"terminal_deviation", to_json(m.terminal_deviation)}};
}

void write_json_file(const fs::path& file, const json& j) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + file.string() + "'");
  out << j.dump(2) << '\n';
}

void write_feature_plot(const fs::path& file, const std::vector<TrajectoryRecord>& tr) {
  std::vector<Series> s = {{"d_x [um]", "#1f77b4", {}},
                           {"d_y [um]", "#ff7f0e", {}},
                           {"l [mm]", "#2ca02c", {}},
                           {"theta_x [mrad]", "#d62728", {}},
                           {"theta_y [mrad]", "#9467bd", {}}};
  for (const TrajectoryRecord& r : tr) {
    s[0].points.emplace_back(r.t, r.x_act.d_x * 1e6);
    s[1].points.emplace_back(r.t, r.x_act.d_y * 1e6);
    s[2].points.emplace_back(r.t, r.x_act.l * 1e3);
    s[3].points.emplace_back(r.t, r.x_act.theta_x * 1e3);
    s[4].points.emplace_back(r.t, r.x_act.theta_y * 1e3);
  }
  write_line_plot(file, "Features vs time", "t [s]", "per-series units", s);
}

void write_response_plot(const fs::path& file, const std::vector<TrajectoryRecord>& tr) {
  std::vector<Series> s = {{"F_x [N]", "#1f77b4", {}},
                           {"F_y [N]", "#ff7f0e", {}},
                           {"F_z [N]", "#2ca02c", {}},
                           {"M_x [N*mm]", "#d62728", {}},
                           {"M_y [N*mm]", "#9467bd", {}}};
  for (const TrajectoryRecord& r : tr) {
    s[0].points.emplace_back(r.t, r.F_ext.F_x);
    s[1].points.emplace_back(r.t, r.F_ext.F_y);
    s[2].points.emplace_back(r.t, r.F_ext.F_z);
    s[3].points.emplace_back(r.t, r.F_ext.M_x * 1e3);
    s[4].points.emplace_back(r.t, r.F_ext.M_y * 1e3);
  }
  write_line_plot(file, "Responses vs time", "t [s]", "per-series units", s);
}

int cmd_simulate(const std::string& cfg_path, const std::string& out_flag) {
  const LoadedConfig cfg = load_config(cfg_path);
  const fs::path dir = resolve_out(out_flag, cfg.output);
  const RunResult res = run_scenario(cfg.scenario);
  write_trajectory_csv(dir / "trajectory.csv", res.trajectory);
  write_json_file(dir / "metrics.json", to_json(res.metrics));
  if (cfg.output.plots) {
    write_feature_plot(dir / "features.svg", res.trajectory);
    write_response_plot(dir / "responses.svg", res.trajectory);
  }
  std::cout << (res.metrics.success ? std::string("success") : res.metrics.abort_reason)
            << " at t=" << format_double(res.metrics.end_time) << " s; outputs in "
            << dir.string() << "\n";
  return res.metrics.success ? 0 : 2;
}

int cmd_compare(const std::string& cfg_path, const std::string& out_flag) {
  const LoadedConfig cfg = load_config(cfg_path);
  const fs::path dir = resolve_out(out_flag, cfg.output);
  const struct {
    const char* name;
    ControllerKind kind;
    const char* color;
  } runs[] = {{"fbcc", ControllerKind::fbcc, "#1f77b4"},
              {"admittance", ControllerKind::admittance, "#d62728"},
              {"open_loop", ControllerKind::open_loop, "#7f7f7f"}};
  json summary;
  std::vector<Series> tilt, force;
  for (const auto& r : runs) {
    Scenario sc = cfg.scenario;  // the config's controller choice is ignored here
    sc.controller = r.kind;
    const RunResult res = run_scenario(sc);
    write_trajectory_csv(dir / (std::string("trajectory_") + r.name + ".csv"),
                         res.trajectory);
    summary[r.name] = to_json(res.metrics);
    Series st{std::string(r.name) + " theta_y [mrad]", r.color, {}};
    Series sf{std::string(r.name) + " F_x [N]", r.color, {}};
    for (const TrajectoryRecord& rec : res.trajectory) {
      st.points.emplace_back(rec.t, rec.x_act.theta_y * 1e3);
      sf.points.emplace_back(rec.t, rec.F_ext.F_x);
    }
    tilt.push_back(std::move(st));
    force.push_back(std::move(sf));
    std::cout << r.name << ": "
              << (res.metrics.success ? std::string("success") : res.metrics.abort_reason)
              << " at t=" << format_double(res.metrics.end_time) << " s\n";
  }
  write_json_file(dir / "comparison.json", summary);
  if (cfg.output.plots) {
    write_line_plot(dir / "overlay_tilt.svg", "Tilt recovery by controller", "t [s]",
                    "theta_y [mrad]", tilt);
    write_line_plot(dir / "overlay_force.svg", "Lateral force by controller", "t [s]",
                    "F_x [N]", force);
  }
  return 0;
}

int cmd_map(const std::string& cfg_path, const std::string& out_flag) {
  const LoadedConfig cfg = load_config(cfg_path);
  const fs::path dir = resolve_out(out_flag, cfg.output);
  const Geometry& g = cfg.scenario.geometry;
  const MapSpec& ms = cfg.map;
  std::vector<MapCell> cells;
  std::vector<StateLabel> feat, resp;
  cells.reserve(static_cast<std::size_t>(ms.n_d) * ms.n_theta);
  for (int iy = 0; iy < ms.n_theta; ++iy) {
    const double theta =
        -ms.theta_range + 2.0 * ms.theta_range * iy / (ms.n_theta - 1);
    for (int ix = 0; ix < ms.n_d; ++ix) {
      const double d = -ms.d_range + 2.0 * ms.d_range * ix / (ms.n_d - 1);
      MapCell c;
      c.d = d;
      c.theta = theta;
      c.feature_state = classify_features(Plane::XOZ, d, ms.l, theta, g);
      FeatureVector x;
      x.d_x = d;
      x.l = ms.l;
      x.theta_y = theta;
      const ResponseVector F = respond(x, g, cfg.scenario.quadrature);
      c.response_state = classify_responses(Plane::XOZ, F.F_x, F.F_z, F.M_y, ms.l, g,
                                            cfg.scenario.tol);
      c.F_x = F.F_x;
      c.F_z = F.F_z;
      c.M_y = F.M_y;
      if (F.F_z > cfg.scenario.tol.eps_force) {
        c.u = F.F_x / F.F_z;
        c.v = F.M_y / (g.R * F.F_z);
        c.has_uv = true;
      }
      cells.push_back(c);
      feat.push_back(c.feature_state);
      resp.push_back(c.response_state);
    }
  }
  write_map_csv(dir / "map.csv", cells);
  if (cfg.output.plots) {
    write_region_map(dir / "feature_map.svg", "Feature-plane states", "d [m]",
                     "theta [rad]", ms.n_d, ms.n_theta, feat, -ms.d_range, ms.d_range,
                     -ms.theta_range, ms.theta_range);
    write_region_map(dir / "response_map.svg", "Response-side states", "d [m]",
                     "theta [rad]", ms.n_d, ms.n_theta, resp, -ms.d_range, ms.d_range,
                     -ms.theta_range, ms.theta_range);
  }
  std::cout << cells.size() << " cells mapped at l=" << format_double(ms.l)
            << " m; outputs in " << dir.string() << "\n";
  return 0;
}

int cmd_sweep(const std::string& cfg_path, const std::string& out_flag, int n_override,
              bool seed_given, std::uint64_t seed_override) {
  LoadedConfig cfg = load_config(cfg_path);
  if (n_override > 0) cfg.sweep.n = n_override;
  if (seed_given) cfg.scenario.seed = seed_override;
  const fs::path dir = resolve_out(out_flag, cfg.output);
  const SweepReport rep = run_sweep(cfg.scenario, cfg.sweep);
  json trials = json::array();
  for (std::size_t i = 0; i < rep.runs.size(); ++i) {
    trials.push_back(json{{"deviation", to_json(rep.deviations[i])},
                          {"success", rep.runs[i].success},
                          {"abort_reason", rep.runs[i].abort_reason},
                          {"end_time", rep.runs[i].end_time},
                          {"peak_F_z", rep.runs[i].peak.F_z}});
  }
  write_json_file(dir / "sweep.json",
                  json{{"n", rep.n},
                       {"success_rate", rep.success_rate},
                       {"seed", cfg.scenario.seed},
                       {"peak_F_z",
                        json{{"min", rep.peak_F_z_min},
                             {"mean", rep.peak_F_z_mean},
                             {"max", rep.peak_F_z_max}}},
                       {"trials", trials}});
  write_sweep_csv(dir / "sweep.csv", rep);
  std::cout << rep.n << " trials, success rate " << format_double(rep.success_rate)
            << ", peak F_z max " << format_double(rep.peak_F_z_max) << " N; outputs in "
            << dir.string() << "\n";
  return 0;
}

int cmd_verify(const std::string& cfg_path, const std::string& profile) {
  VerifyOptions opt;
  if (!cfg_path.empty()) {
    // Unchecked load: invariant-violating settings must reach the checks
    // and fail there, not at config validation.
    const LoadedConfig cfg = load_config_unchecked(cfg_path);
    opt.geometries = {cfg.scenario.geometry};
    opt.quadrature = cfg.scenario.quadrature;
    opt.tol = cfg.scenario.tol;
    if (cfg.scenario.seed != 0) opt.seed = cfg.scenario.seed;
  }
  if (profile == "strict") opt.identity_scale = 0.1;
  const std::vector<CheckResult> results = run_verification(opt);
  for (const CheckResult& r : results) {
    std::printf("[%s] %-24s %s\n", r.skipped ? "SKIP" : (r.pass ? "PASS" : "FAIL"),
                r.name.c_str(), r.detail.c_str());
  }
  return all_passed(results) ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contact-state mapping and compliant peg insertion toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::string verify_config, profile = "default";
  int n_override = -1;
  std::uint64_t seed_override = 0;

  CLI::App* sub_sim =
      app.add_subcommand("simulate", "Run one scenario; write trajectory, metrics, plots");
  sub_sim->add_option("config", config_path, "scenario config (JSON)")->required();
  sub_sim->add_option("--out", out_dir, "output directory");

  CLI::App* sub_cmp = app.add_subcommand(
      "compare", "Run the scenario under all three controllers side by side");
  sub_cmp->add_option("config", config_path, "scenario config (JSON)")->required();
  sub_cmp->add_option("--out", out_dir, "output directory");

  CLI::App* sub_map = app.add_subcommand(
      "map", "Grid the feature plane at fixed depth; write region CSV and SVGs");
  sub_map->add_option("config", config_path, "scenario config (JSON)")->required();
  sub_map->add_option("--out", out_dir, "output directory");

  CLI::App* sub_swp =
      app.add_subcommand("sweep", "Monte Carlo over initial deviations");
  sub_swp->add_option("config", config_path, "scenario config (JSON)")->required();
  sub_swp->add_option("--out", out_dir, "output directory");
  sub_swp->add_option("--n", n_override, "trial count override");
  CLI::Option* seed_opt = sub_swp->add_option("--seed", seed_override, "seed override");

  CLI::App* sub_ver =
      app.add_subcommand("verify", "Run the model invariant self-checks");
  sub_ver->add_option("config", verify_config, "optional scenario config (JSON)");
  sub_ver->add_option("--tol-profile", profile, "tolerance profile")
      ->check(CLI::IsMember({"default", "strict"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (sub_sim->parsed()) return cmd_simulate(config_path, out_dir);
    if (sub_cmp->parsed()) return cmd_compare(config_path, out_dir);
    if (sub_map->parsed()) return cmd_map(config_path, out_dir);
    if (sub_swp->parsed())
      return cmd_sweep(config_path, out_dir, n_override, seed_opt->count() > 0,
                       seed_override);
    if (sub_ver->parsed()) return cmd_verify(verify_config, profile);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
