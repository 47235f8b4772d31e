// Generated by tests/golden/gen_golden.py. Do not edit by hand.
#pragma once

namespace golden {

// atan(tan(2 deg) * cos(45 deg)), radians
inline constexpr double tilt_axis_angle_2deg_45az = 0.024687696117208396;

// slice-center x at s=0 for d_x=0.05mm, l=5mm, tilt 2 deg toward +X, meters
inline constexpr double slice_center_opx_tip = -3.7248741756252429e-5;

// boundary tilt angle, L=10mm H=5mm mu=0.3 R=5.05mm l=5mm, radians
inline constexpr double gamma_l5mm = 1.2249502137890973;

// ray root of the frozen-wrench configuration at s=0.3*s_u, alpha=0.3 rad, meters
inline constexpr double ray_root_spot_s = 0.0014997715427345869;
inline constexpr double ray_root_spot = 0.0050431343596179283;

// wrench for interference fit R=5.03mm r=5.04mm L=10mm H=5mm k=1e8 mu=0.5,
// features (d_x=0.02mm, 0, l=5mm, 0, theta_y=1 deg); trapezoid rule, grid 512x2048.
// Grid 1024x4096 agrees within 6.22e-07 of the wrench norm.
inline constexpr double wrench_F_x = 20.44138066782769;
inline constexpr double wrench_F_y = -3.433162920618571e-15;
inline constexpr double wrench_F_z = 23.41708505804959;
inline constexpr double wrench_M_x = -5.139413200572207e-17;
inline constexpr double wrench_M_y = 0.3451847891304597;

}  // namespace golden
