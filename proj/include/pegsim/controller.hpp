#pragma once

#include <string>

#include "pegsim/contact_model.hpp"
#include "pegsim/state_map.hpp"

namespace pegsim {

// Diagonal second-order compliance gains, one triple per channel group:
// p = lateral offsets, o = tilt angles, l = insertion depth. The presets
// are critically damped: D = sqrt(M K) per channel.
struct ComplianceParams {
  double M_dp = 1e4, D_dp = 1e5, K_dp = 1e6;
  double M_do = 1e1, D_do = 1e2, K_do = 1e3;
  double M_dl = 1e10, D_dl = 1e11, K_dl = 1e12;

  // Preset labels "1".."5"; "3" matches the defaults above.
  static ComplianceParams preset(const std::string& label);

  // Diagonals in channel order (d_x, d_y, l, theta_x, theta_y).
  Vec5 M() const;
  Vec5 D() const;
  Vec5 K() const;
  void validate() const;  // throws DomainError
};

// Explicitly threaded controller state; stepping functions consume one
// state and produce the next.
struct ControllerState {
  FeatureVector x_rfr;      // running reference
  FeatureVector x_d_prev;   // adjustment one step back
  FeatureVector x_d_prev2;  // adjustment two steps back
  ComplianceParams params;
  double dt = 1e-3;         // s
  Vec5 x_d_limit = default_x_d_limit();  // per-channel deadband, m / rad
  double F_limit = 80.0;    // N, per force component
  double M_limit = 2.5;     // N*m, per moment component
  double v_feed = 5e-3;     // m/s insertion feed

  // Deadbands sized so the reference integrator freezes once responses
  // drop inside the classification dead zone.
  static Vec5 default_x_d_limit();
  void validate() const;  // throws DomainError
};

// Channel rows (d_x, d_y, l, theta_x, theta_y) by wrench columns
// (F_x, F_y, F_z, M_x, M_y).
using DirectionMatrix = Eigen::Matrix<double, 5, 5>;

// Tilt of the zero-offset contact line in the normalized response plane.
double gamma(double l, const Geometry& g);

// Offset channels pick their force component directly; tilt channels blend
// force and moment along the normal of the mapped contact line, so a wrench
// sitting on that line produces zero tilt adjustment.
DirectionMatrix direction_matrix(double l, const Geometry& g);

struct StepResult {
  FeatureVector x_c;     // commanded features for the next tick
  ControllerState next;  // state after the step
  FeatureVector x_d;     // adjustment solved this step
};

// One control tick: solve the discretized compliance dynamics
//   [M/dt^2 + D/dt + K] x_d(i) = A F_ext + M (2 x_d(i-1) - x_d(i-2))/dt^2
//                                + D x_d(i-1)/dt,
// fold adjustments beyond the deadband into the running reference, advance
// the feed (capped at the hole depth), and command the reference.
StepResult fbcc_step(const ControllerState& st, const ResponseVector& F_ext,
                     double l_now, const Geometry& g);

// Baseline with the same discretization but no line-aligned blending
// (direction matrix held at zero line tilt) and no reference integrator:
// the command is reference minus the current adjustment, so a standing
// wrench keeps a standing offset.
StepResult admittance_step(const ControllerState& st,
                           const ResponseVector& F_ext, double l_now,
                           const Geometry& g);

enum class StepVerdict { proceed, success, force_abort };

// Success once l reaches L (within depth_tol); abort when any force
// component exceeds F_limit or any moment exceeds M_limit.
StepVerdict should_terminate(const ControllerState& st,
                             const ResponseVector& F_ext, double l_now,
                             double L, double depth_tol = 0.0);

}  // namespace pegsim
