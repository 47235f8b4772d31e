#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pegsim/geometry.hpp"
#include "golden/golden_values.hpp"

using namespace pegsim;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}
}  // namespace

TEST_CASE("polar tilt to axis angles") {
  SUBCASE("zero tilt collapses regardless of azimuth") {
    auto [tx, ty] = to_axis_angles({0.0, 1.0});
    CHECK(tx == 0.0);
    CHECK(ty == 0.0);
  }
  SUBCASE("zero azimuth keeps the whole tilt on theta_x") {
    auto [tx, ty] = to_axis_angles({0.1, 0.0});
    CHECK(tx == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(ty == 0.0);
  }
  SUBCASE("45 degree azimuth splits a 2 degree tilt evenly") {
    auto [tx, ty] = to_axis_angles({2.0 * kDeg, 45.0 * kDeg});
    CHECK(tx == doctest::Approx(golden::tilt_axis_angle_2deg_45az).epsilon(1e-14));
    CHECK(ty == doctest::Approx(golden::tilt_axis_angle_2deg_45az).epsilon(1e-14));
  }
  SUBCASE("tilt at or beyond a right angle is rejected") {
    CHECK_THROWS_AS(to_axis_angles({kPi / 2, 0.0}), DomainError);
    CHECK_THROWS_AS(to_axis_angles({-0.1, 0.0}), DomainError);
  }
}

TEST_CASE("axis angles to polar tilt") {
  SUBCASE("origin maps to the zero-azimuth convention") {
    const PolarTilt t = from_axis_angles(0.0, 0.0);
    CHECK(t.theta == 0.0);
    CHECK(t.phi == 0.0);
  }
  SUBCASE("single-axis lean") {
    const PolarTilt t = from_axis_angles(0.1, 0.0);
    CHECK(t.theta == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(t.phi == 0.0);
  }
  SUBCASE("even split recovers the diagonal azimuth") {
    const PolarTilt t =
        from_axis_angles(golden::tilt_axis_angle_2deg_45az, golden::tilt_axis_angle_2deg_45az);
    CHECK(t.theta == doctest::Approx(2.0 * kDeg).epsilon(1e-12));
    CHECK(t.phi == doctest::Approx(45.0 * kDeg).epsilon(1e-12));
  }
  SUBCASE("right-angle leans are rejected") {
    CHECK_THROWS_AS(from_axis_angles(kPi / 2, 0.0), DomainError);
    CHECK_THROWS_AS(from_axis_angles(0.0, -kPi / 2), DomainError);
  }
}

TEST_CASE("tilt representations round trip within 1e-12") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const double tx = uniform(rng, -80.0 * kDeg, 80.0 * kDeg);
    const double ty = uniform(rng, -80.0 * kDeg, 80.0 * kDeg);
    const PolarTilt t = from_axis_angles(tx, ty);
    CHECK(t.theta >= 0.0);
    CHECK(t.theta < kPi / 2);
    CHECK(t.phi > -kPi);
    CHECK(t.phi <= kPi);
    auto [bx, by] = to_axis_angles(t);
    CHECK(std::abs(bx - tx) <= 1e-12);
    CHECK(std::abs(by - ty) <= 1e-12);
  }
}

TEST_CASE("small tilts split linearly by azimuth") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    const double theta = uniform(rng, 0.0, 1.0 * kDeg);
    const double phi = uniform(rng, -kPi, kPi);
    auto [tx, ty] = to_axis_angles({theta, phi});
    CHECK(std::abs(tx - theta * std::cos(phi)) <= 1e-6);
    CHECK(std::abs(ty - theta * std::sin(phi)) <= 1e-6);
  }
}

TEST_CASE("plane decomposition is a pure projection") {
  SUBCASE("component routing") {
    FeatureVector x{1.0, 2.0, 3.0, 4.0, 5.0};
    auto [xoz, yoz] = decompose(x);
    CHECK(xoz.d == 1.0);
    CHECK(xoz.l == 3.0);
    CHECK(xoz.theta == 5.0);
    CHECK(yoz.d == 2.0);
    CHECK(yoz.l == 3.0);
    CHECK(yoz.theta == 4.0);
  }
  SUBCASE("zero vector gives two zero triples") {
    auto [xoz, yoz] = decompose(FeatureVector{});
    CHECK(xoz.d == 0.0);
    CHECK(xoz.l == 0.0);
    CHECK(xoz.theta == 0.0);
    CHECK(yoz.d == 0.0);
    CHECK(yoz.l == 0.0);
    CHECK(yoz.theta == 0.0);
  }
  SUBCASE("typical starting deviation") {
    FeatureVector x{0.05e-3, 0.0, 1e-3, 0.0, 2.0 * kDeg};
    auto [xoz, yoz] = decompose(x);
    CHECK(xoz.d == 0.05e-3);
    CHECK(xoz.l == 1e-3);
    CHECK(xoz.theta == 2.0 * kDeg);
    CHECK(yoz.d == 0.0);
    CHECK(yoz.theta == 0.0);
  }
  SUBCASE("lossless: the two triples rebuild the vector") {
    FeatureVector x{-3e-5, 7e-5, 4e-3, -0.01, 0.02};
    auto [xoz, yoz] = decompose(x);
    FeatureVector back{xoz.d, yoz.d, xoz.l, yoz.theta, xoz.theta};
    CHECK(back.vec() == x.vec());
  }
}

TEST_CASE("vector accessors round trip") {
  FeatureVector x{1e-5, -2e-5, 3e-3, 0.01, -0.02};
  CHECK(FeatureVector::from_vec(x.vec()).vec() == x.vec());
  Vec5 v;
  v << 1, 2, 3, 4, 5;
  const FeatureVector y = FeatureVector::from_vec(v);
  CHECK(y.d_x == 1.0);
  CHECK(y.d_y == 2.0);
  CHECK(y.l == 3.0);
  CHECK(y.theta_x == 4.0);
  CHECK(y.theta_y == 5.0);
}

TEST_CASE("hole frame validation") {
  HoleFrame f;
  CHECK_NOTHROW(f.validate());
  f.x_axis = Eigen::Vector3d(1.0, 1e-3, 0.0);  // not unit length
  CHECK_THROWS_AS(f.validate(), DomainError);
  HoleFrame g;
  g.z_axis = Eigen::Vector3d(0.0, 0.0, 2.0);
  CHECK_THROWS_AS(g.validate(), DomainError);
}

TEST_CASE("pose to features in the canonical frame") {
  const HoleFrame frame;
  SUBCASE("aligned tip at the hole mouth") {
    const FeatureVector x = feature_from_pose(Eigen::Isometry3d::Identity(), frame);
    CHECK(x.d_x == 0.0);
    CHECK(x.d_y == 0.0);
    CHECK(x.l == 0.0);
    CHECK(x.theta_x == 0.0);
    CHECK(x.theta_y == 0.0);
  }
  SUBCASE("pure translation maps to offsets and depth") {
    Eigen::Isometry3d pose = Eigen::Isometry3d::Identity();
    pose.translation() = Eigen::Vector3d(0.05e-3, 0.0, -1e-3);
    const FeatureVector x = feature_from_pose(pose, frame);
    CHECK(x.d_x == doctest::Approx(0.05e-3).epsilon(1e-12));
    CHECK(x.d_y == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(x.l == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(x.theta_x == 0.0);
    CHECK(x.theta_y == 0.0);
  }
  SUBCASE("tip above the surface clamps depth at zero") {
    Eigen::Isometry3d pose = Eigen::Isometry3d::Identity();
    pose.translation() = Eigen::Vector3d(2e-5, -1e-5, 3e-3);
    const FeatureVector x = feature_from_pose(pose, frame);
    CHECK(x.l == 0.0);
    CHECK(x.d_x == doctest::Approx(2e-5).epsilon(1e-12));
    CHECK(x.d_y == doctest::Approx(-1e-5).epsilon(1e-12));
  }
  SUBCASE("axis lying in the top plane is degenerate") {
    Eigen::Isometry3d pose = Eigen::Isometry3d::Identity();
    Eigen::Matrix3d m;
    m << 0, 0, 1, 0, 1, 0, -1, 0, 0;  // peg axis along +X exactly
    pose.linear() = m;
    CHECK_THROWS_AS(feature_from_pose(pose, frame), DomainError);
  }
  SUBCASE("axis pointing into the hole is degenerate") {
    Eigen::Isometry3d pose = Eigen::Isometry3d::Identity();
    pose.linear() =
        Eigen::AngleAxisd(kPi, Eigen::Vector3d::UnitX()).toRotationMatrix();
    CHECK_THROWS_AS(feature_from_pose(pose, frame), DomainError);
  }
}

TEST_CASE("features to pose in the canonical frame") {
  const HoleFrame frame;
  SUBCASE("zero features give the aligned mouth pose") {
    const Eigen::Isometry3d pose = pose_from_feature(FeatureVector{}, frame);
    CHECK(pose.translation().norm() <= 1e-15);
    CHECK((pose.linear() - Eigen::Matrix3d::Identity()).norm() <= 1e-15);
  }
  SUBCASE("pure axial insertion") {
    FeatureVector x;
    x.l = 4e-3;
    const Eigen::Isometry3d pose = pose_from_feature(x, frame);
    CHECK((pose.translation() - Eigen::Vector3d(0, 0, -4e-3)).norm() <= 1e-15);
    CHECK((pose.linear() - Eigen::Matrix3d::Identity()).norm() <= 1e-15);
  }
}

TEST_CASE("pose and feature maps invert each other") {
  // A deliberately inconvenient frame: shifted origin, leaning axes.
  HoleFrame frame;
  frame.origin = Eigen::Vector3d(0.12, -0.07, 0.31);
  frame.z_axis = Eigen::Vector3d(0.2, -0.1, 0.97).normalized();
  Eigen::Vector3d x0(1.0, 0.4, -0.2);
  x0 -= frame.z_axis * frame.z_axis.dot(x0);
  frame.x_axis = x0.normalized();
  frame.validate();

  std::mt19937_64 rng(99);
  for (int i = 0; i < 1000; ++i) {
    FeatureVector x;
    x.d_x = uniform(rng, -1e-3, 1e-3);
    x.d_y = uniform(rng, -1e-3, 1e-3);
    x.l = uniform(rng, 0.0, 9e-3);
    x.theta_x = uniform(rng, -30.0 * kDeg, 30.0 * kDeg);
    x.theta_y = uniform(rng, -30.0 * kDeg, 30.0 * kDeg);
    const FeatureVector back = feature_from_pose(pose_from_feature(x, frame), frame);
    CHECK(std::abs(back.d_x - x.d_x) <= 1e-12);
    CHECK(std::abs(back.d_y - x.d_y) <= 1e-12);
    CHECK(std::abs(back.l - x.l) <= 1e-12);
    CHECK(std::abs(back.theta_x - x.theta_x) <= 1e-12);
    CHECK(std::abs(back.theta_y - x.theta_y) <= 1e-12);
  }
}
