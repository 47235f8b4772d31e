#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <utility>

#include "pegsim/errors.hpp"

namespace pegsim {

using Vec5 = Eigen::Matrix<double, 5, 1>;

// Relative peg/hole pose in the hole frame. Lateral offsets are measured
// where the peg axis crosses depth l/2 (the hole mouth while l = 0, which
// keeps them continuous through first contact). theta_y leans the axis
// toward +X, theta_x toward +Y; both are bounded away from pi/2.
struct FeatureVector {
  double d_x = 0.0;      // m
  double d_y = 0.0;      // m
  double l = 0.0;        // insertion depth, m, >= 0
  double theta_x = 0.0;  // rad
  double theta_y = 0.0;  // rad

  Vec5 vec() const;
  static FeatureVector from_vec(const Vec5& v);
};

// Polar form of the axis lean: theta is the total tilt, phi the azimuth
// measured from the theta_x leg toward the theta_y leg. phi = 0 at zero
// tilt so the inverse map is deterministic.
struct PolarTilt {
  double theta = 0.0;  // rad, in [0, pi/2)
  double phi = 0.0;    // rad, in (-pi, pi]
};

// Coordinate frame on the hole top surface, z pointing out of the hole.
struct HoleFrame {
  Eigen::Vector3d origin = Eigen::Vector3d::Zero();
  Eigen::Vector3d z_axis = Eigen::Vector3d::UnitZ();
  Eigen::Vector3d x_axis = Eigen::Vector3d::UnitX();

  Eigen::Vector3d y_axis() const { return z_axis.cross(x_axis); }
  void validate() const;                 // axes orthonormal to 1e-12
  Eigen::Isometry3d transform() const;   // hole coordinates -> world
};

// tan(theta_x) = tan(theta) cos(phi), tan(theta_y) = tan(theta) sin(phi).
// Returns (theta_x, theta_y). Throws DomainError for theta outside [0, pi/2).
std::pair<double, double> to_axis_angles(const PolarTilt& tilt);

// Exact inverse of to_axis_angles on the valid range.
PolarTilt from_axis_angles(double theta_x, double theta_y);

struct PlaneTriple {
  double d = 0.0;      // m
  double l = 0.0;      // m
  double theta = 0.0;  // rad
};

// Splits a feature vector into its two independent contact planes:
// XOZ keeps (d_x, l, theta_y), YOZ keeps (d_y, l, theta_x).
std::pair<PlaneTriple, PlaneTriple> decompose(const FeatureVector& x);

// pose carries the peg tip frame: origin at the tip center, +z up the peg
// axis. Insertion depth clamps at zero while the tip is above the surface.
// Throws DomainError when the axis does not point out of the hole.
FeatureVector feature_from_pose(const Eigen::Isometry3d& pose,
                                const HoleFrame& frame);

// Inverse of feature_from_pose; the returned pose uses the roll-free
// (shortest-arc) rotation taking +z to the peg axis.
Eigen::Isometry3d pose_from_feature(const FeatureVector& x,
                                    const HoleFrame& frame);

}  // namespace pegsim
