#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pegsim/controller.hpp"

namespace pegsim {

enum class ControllerKind { fbcc, admittance, open_loop };

// One closed-loop insertion run: geometry, starting deviation, control law,
// timing, and classification tolerances.
struct Scenario {
  Geometry geometry;
  FeatureVector initial_deviation;  // l component must be 0
  double target_depth = 10e-3;      // m
  ComplianceParams params;          // preset "3" values
  ControllerKind controller = ControllerKind::fbcc;
  double dt = 1e-3;        // s
  double duration = 5.0;   // s
  double v_feed = 5e-3;    // m/s
  QuadratureSpec quadrature;
  std::uint64_t seed = 0;  // consumed by sweeps
  BoundaryTolerances tol;
  Vec5 x_d_limit = ControllerState::default_x_d_limit();
  double F_limit = 80.0;        // N
  double M_limit = 2.5;         // N*m
  double depth_tolerance = 1e-9;  // m, success band below target depth
  // Declared workspace for initial deviations.
  double workspace_pos = 1e-4;                              // m
  double workspace_ang = 2.0 * std::numbers::pi / 180.0;    // rad

  void validate() const;  // throws DomainError / ConfigError
};

// One sample of the run. The robot is ideal, so the commanded and achieved
// features coincide; state labels are the sensor-side ones, which stay
// defined before first contact.
struct TrajectoryRecord {
  double t = 0.0;
  FeatureVector x_cmd;
  FeatureVector x_act;
  ResponseVector F_ext;
  StateLabel state_xoz = StateLabel::P0;
  StateLabel state_yoz = StateLabel::P0;
  FeatureVector x_d;
  double gamma = 0.0;  // rad
};

struct RunMetrics {
  bool success = false;
  std::string abort_reason;  // "", "force_abort", or "duration_exhausted"
  ResponseVector peak;       // componentwise max magnitudes
  ResponseVector terminal;
  // Terminal offsets/tilts; the l entry holds the remaining depth.
  FeatureVector terminal_deviation;
  // Largest |theta_y| excursion beyond its initial magnitude, carrying the
  // sign of theta_y at that instant; 0 when never exceeded.
  double overshoot_theta_y = 0.0;
  // Earliest time from which both plane responses stay inside the rest
  // band to the end of the run; -1 when they never settle.
  double settling_time = -1.0;
  double end_time = 0.0;
};

struct RunResult {
  std::vector<TrajectoryRecord> trajectory;
  RunMetrics metrics;
};

// Deterministic: equal scenarios give bit-identical trajectories.
RunResult run_scenario(const Scenario& sc);

struct SweepSpec {
  int n = 20;
  double position_range = 1e-4;  // m, uniform on both offsets
  double angle_range = 0.0;      // rad, uniform on both tilts when > 0
};

struct SweepReport {
  int n = 0;
  double success_rate = 0.0;
  std::vector<FeatureVector> deviations;  // per trial
  std::vector<RunMetrics> runs;           // per trial
  double peak_F_z_min = 0.0;
  double peak_F_z_mean = 0.0;
  double peak_F_z_max = 0.0;
};

// Repeats the template scenario with per-trial random initial deviations.
// Trial i derives its draw from (template seed, i) only, so reports do not
// depend on execution order.
SweepReport run_sweep(const Scenario& tmpl, const SweepSpec& sp);

struct ReplayRecord {
  FeatureVector x;
  ResponseVector F_ext;
  StateLabel feature_xoz = StateLabel::P0;
  StateLabel feature_yoz = StateLabel::P0;
  StateLabel response_xoz = StateLabel::P0;
  StateLabel response_yoz = StateLabel::P0;
  double u_xoz = 0.0, v_xoz = 0.0;  // zero while F_z is in the dead zone
  double u_yoz = 0.0, v_yoz = 0.0;
};

// Evaluates the contact model and both classifiers along a designed feature
// path (no controller in the loop).
std::vector<ReplayRecord> replay_feature_trajectory(
    const std::vector<FeatureVector>& path, const Geometry& g,
    const QuadratureSpec& q = {}, const BoundaryTolerances& tol = {});

}  // namespace pegsim
