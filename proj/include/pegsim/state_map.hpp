#pragma once

#include <numbers>

#include "pegsim/contact_model.hpp"

namespace pegsim {

// Per-plane contact label. P covers no contact and the single-line contacts
// reached at zero tilt; D covers two-edge contact. The subscript is the sign
// of the lateral offset; the "h" families mirror D under negative tilt.
enum class StateLabel {
  P0,
  P1,
  Pm1,
  D0,
  Dh0,
  D1,
  Dm1,
  Dh1,
  Dhm1,
};

// Stable text forms: "P_0", "P_1", "P_-1", "D_0", "Dh_0", "D_1", "D_-1",
// "Dh_1", "Dh_-1".
const char* to_string(StateLabel s);

enum class Plane { XOZ, YOZ };

// Classification bands. Exact boundaries are measure-zero sets; sensed
// wrenches need a dead zone and an angular band to land on them.
struct BoundaryTolerances {
  double eps_force = 0.05;  // N, dead zone on response components
  double eps_angle = 2.0 * std::numbers::pi / 180.0;  // rad, line band
  void validate() const;  // throws ConfigError
};

// Ground-truth label from the plane features (d, l, theta). Clearance fit
// keeps a no-contact rhombus |d| + l|tan(theta)|/2 <= R - r; interference
// fit only rests at the exact origin. Throws DomainError for l <= 0.
StateLabel classify_features(Plane plane, double d, double l, double theta,
                             const Geometry& g);

// Slope of the zero-offset contact line in the normalized response plane
// (F_lat/F_z, M/(R F_z)): (-l/2 + L + H + mu R) / R.
double boundary_slope(double l, const Geometry& g);

// Sensor-side label from the plane wrench (F_lat, F_z, M). Ties resolve
// toward the lower-dimensional state: point beats line beats region.
// Throws InconsistentWrenchError when lateral load appears without axial
// support.
StateLabel classify_responses(Plane plane, double F_lat, double F_z, double M,
                              double l, const Geometry& g,
                              const BoundaryTolerances& tol = {});

struct PlaneAgreement {
  StateLabel feature_label = StateLabel::P0;
  StateLabel response_label = StateLabel::P0;
  bool match = false;
  // Normalized response coordinates; zero while F_z sits in the dead zone.
  double u = 0.0;
  double v = 0.0;
};

struct AgreementReport {
  PlaneAgreement xoz;
  PlaneAgreement yoz;
  ResponseVector wrench;
};

// Runs both classifiers on both planes of one feature point and reports
// whether they agree.
AgreementReport consistency_check(const FeatureVector& x, const Geometry& g,
                                  const QuadratureSpec& q = {},
                                  const BoundaryTolerances& tol = {});

}  // namespace pegsim
