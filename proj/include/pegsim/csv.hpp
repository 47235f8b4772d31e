#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "pegsim/sim.hpp"

namespace pegsim {

// Shortest round-trip decimal form, locale-independent ('.' separator).
std::string format_double(double v);

// One feature-plane grid cell of a region map.
struct MapCell {
  double d = 0.0;      // m, signed lateral offset in the sampled plane
  double theta = 0.0;  // rad, signed tilt in the sampled plane
  StateLabel feature_state = StateLabel::P0;
  StateLabel response_state = StateLabel::P0;
  double F_x = 0.0, F_z = 0.0, M_y = 0.0;
  double u = 0.0, v = 0.0;  // normalized response coordinates
  bool has_uv = false;      // false while F_z sits in the dead zone
};

// Columns: t, d_x, d_y, l, theta_x, theta_y, F_x, F_y, F_z, M_x, M_y,
// state_xoz, state_yoz, x_d_dx, x_d_dy, x_d_l, x_d_thx, x_d_thy, gamma.
void write_trajectory_csv(const std::filesystem::path& file,
                          const std::vector<TrajectoryRecord>& trajectory);

// Columns: d, theta, feature_state, response_state, F_x, F_z, M_y, u, v
// (u, v left empty in the dead zone).
void write_map_csv(const std::filesystem::path& file, const std::vector<MapCell>& cells);

// Columns: trial, d_x0, d_y0, theta_x0, theta_y0, success, abort_reason,
// end_time, peak_F_z, remaining_depth.
void write_sweep_csv(const std::filesystem::path& file, const SweepReport& report);

}  // namespace pegsim
