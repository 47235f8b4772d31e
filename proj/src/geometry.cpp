#include "pegsim/geometry.hpp"

#include <cmath>
#include <numbers>

namespace pegsim {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
}

Vec5 FeatureVector::vec() const {
  Vec5 v;
  v << d_x, d_y, l, theta_x, theta_y;
  return v;
}

FeatureVector FeatureVector::from_vec(const Vec5& v) {
  return FeatureVector{v[0], v[1], v[2], v[3], v[4]};
}

void HoleFrame::validate() const {
  constexpr double tol = 1e-12;
  if (std::abs(z_axis.norm() - 1.0) > tol ||
      std::abs(x_axis.norm() - 1.0) > tol ||
      std::abs(z_axis.dot(x_axis)) > tol) {
    throw DomainError("hole frame axes must be orthonormal");
  }
}

Eigen::Isometry3d HoleFrame::transform() const {
  Eigen::Isometry3d T = Eigen::Isometry3d::Identity();
  Eigen::Matrix3d R;
  R.col(0) = x_axis;
  R.col(1) = y_axis();
  R.col(2) = z_axis;
  T.linear() = R;
  T.translation() = origin;
  return T;
}

std::pair<double, double> to_axis_angles(const PolarTilt& tilt) {
  if (!(tilt.theta >= 0.0) || tilt.theta >= kHalfPi) {
    throw DomainError("tilt angle must lie in [0, pi/2)");
  }
  const double t = std::tan(tilt.theta);
  return {std::atan(t * std::cos(tilt.phi)), std::atan(t * std::sin(tilt.phi))};
}

PolarTilt from_axis_angles(double theta_x, double theta_y) {
  if (!(std::abs(theta_x) < kHalfPi) || !(std::abs(theta_y) < kHalfPi)) {
    throw DomainError("axis angles must lie in (-pi/2, pi/2)");
  }
  const double tx = std::tan(theta_x);
  const double ty = std::tan(theta_y);
  PolarTilt tilt;
  tilt.theta = std::atan(std::hypot(tx, ty));
  tilt.phi = (tilt.theta == 0.0) ? 0.0 : std::atan2(ty, tx);
  return tilt;
}

std::pair<PlaneTriple, PlaneTriple> decompose(const FeatureVector& x) {
  return {PlaneTriple{x.d_x, x.l, x.theta_y}, PlaneTriple{x.d_y, x.l, x.theta_x}};
}

FeatureVector feature_from_pose(const Eigen::Isometry3d& pose,
                                const HoleFrame& frame) {
  frame.validate();
  const Eigen::Isometry3d local = frame.transform().inverse() * pose;
  const Eigen::Vector3d a = local.linear().col(2);
  if (!(a.z() > 0.0)) {
    throw DomainError("peg axis does not point out of the hole");
  }
  const Eigen::Vector3d tip = local.translation();
  const double tan_ty = a.x() / a.z();
  const double tan_tx = a.y() / a.z();

  FeatureVector x;
  x.theta_y = std::atan(tan_ty);
  x.theta_x = std::atan(tan_tx);
  x.l = std::max(0.0, -tip.z());
  // Walk the axis line from the tip up to the plane z = -l/2 where the
  // lateral offsets are defined.
  const double climb = -0.5 * x.l - tip.z();
  x.d_x = tip.x() + climb * tan_ty;
  x.d_y = tip.y() + climb * tan_tx;
  return x;
}

Eigen::Isometry3d pose_from_feature(const FeatureVector& x,
                                    const HoleFrame& frame) {
  frame.validate();
  if (x.l < 0.0) throw DomainError("insertion depth must be >= 0");
  if (!(std::abs(x.theta_x) < kHalfPi) || !(std::abs(x.theta_y) < kHalfPi)) {
    throw DomainError("axis angles must lie in (-pi/2, pi/2)");
  }
  const double tan_ty = std::tan(x.theta_y);
  const double tan_tx = std::tan(x.theta_x);
  const Eigen::Vector3d axis =
      Eigen::Vector3d(tan_ty, tan_tx, 1.0).normalized();

  Eigen::Isometry3d local = Eigen::Isometry3d::Identity();
  local.linear() = Eigen::Quaterniond::FromTwoVectors(Eigen::Vector3d::UnitZ(),
                                                      axis)
                       .toRotationMatrix();
  local.translation() = Eigen::Vector3d(x.d_x - 0.5 * x.l * tan_ty,
                                        x.d_y - 0.5 * x.l * tan_tx, -x.l);
  return frame.transform() * local;
}

}  // namespace pegsim
