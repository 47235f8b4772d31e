#include "pegsim/state_map.hpp"

#include <cmath>

namespace pegsim {

const char* to_string(StateLabel s) {
  switch (s) {
    case StateLabel::P0: return "P_0";
    case StateLabel::P1: return "P_1";
    case StateLabel::Pm1: return "P_-1";
    case StateLabel::D0: return "D_0";
    case StateLabel::Dh0: return "Dh_0";
    case StateLabel::D1: return "D_1";
    case StateLabel::Dm1: return "D_-1";
    case StateLabel::Dh1: return "Dh_1";
    case StateLabel::Dhm1: return "Dh_-1";
  }
  return "?";
}

void BoundaryTolerances::validate() const {
  if (!(eps_force > 0.0) || !(eps_angle > 0.0)) {
    throw ConfigError("classification tolerances must be positive");
  }
}

StateLabel classify_features(Plane plane, double d, double l, double theta,
                             const Geometry& g) {
  (void)plane;  // both planes share the segmentation rules
  g.validate();
  if (!(l > 0.0)) throw DomainError("plane classification needs l > 0");
  if (!std::isfinite(d) || !(std::abs(theta) < std::numbers::pi / 2.0)) {
    throw DomainError("plane features out of range");
  }

  const bool rest =
      g.clearance_fit()
          ? std::abs(d) + 0.5 * l * std::abs(std::tan(theta)) <= g.R - g.r
          : d == 0.0 && theta == 0.0;
  if (rest) return StateLabel::P0;

  if (theta == 0.0) return d > 0.0 ? StateLabel::P1 : StateLabel::Pm1;

  const bool hat = theta < 0.0;
  if (d > 0.0) return hat ? StateLabel::Dh1 : StateLabel::D1;
  if (d < 0.0) return hat ? StateLabel::Dhm1 : StateLabel::Dm1;
  return hat ? StateLabel::Dh0 : StateLabel::D0;
}

double boundary_slope(double l, const Geometry& g) {
  return (-0.5 * l + g.L + g.H + g.mu * g.R) / g.R;
}

StateLabel classify_responses(Plane plane, double F_lat, double F_z, double M,
                              double l, const Geometry& g,
                              const BoundaryTolerances& tol) {
  (void)plane;  // both planes share the mapped boundaries
  tol.validate();
  if (!(F_z >= 0.0)) throw DomainError("axial response must be >= 0");

  const double m_band = tol.eps_force * g.R;
  if (std::abs(F_lat) <= tol.eps_force && std::abs(M) <= m_band) {
    return StateLabel::P0;
  }
  if (std::abs(F_lat) <= tol.eps_force) {
    return M > 0.0 ? StateLabel::D0 : StateLabel::Dh0;
  }
  if (F_z <= tol.eps_force) {
    throw InconsistentWrenchError(
        "lateral response without axial support");
  }

  const double u = F_lat / F_z;
  const double v = M / (g.R * F_z);
  const double line = std::atan(boundary_slope(l, g));
  // Distance to the full line (both rays), folded to [0, pi/2].
  const double off = std::abs(std::remainder(std::atan2(v, u) - line,
                                             std::numbers::pi));
  if (off <= tol.eps_angle) {
    return u >= 0.0 ? StateLabel::P1 : StateLabel::Pm1;
  }

  const bool positive_tilt = v - boundary_slope(l, g) * u > 0.0;
  if (u > 0.0) return positive_tilt ? StateLabel::D1 : StateLabel::Dh1;
  return positive_tilt ? StateLabel::Dm1 : StateLabel::Dhm1;
}

AgreementReport consistency_check(const FeatureVector& x, const Geometry& g,
                                  const QuadratureSpec& q,
                                  const BoundaryTolerances& tol) {
  const ResponseVector F = respond(x, g, q);
  const auto [xoz, yoz] = decompose(x);

  AgreementReport rep;
  rep.wrench = F;
  rep.xoz.feature_label =
      classify_features(Plane::XOZ, xoz.d, xoz.l, xoz.theta, g);
  rep.yoz.feature_label =
      classify_features(Plane::YOZ, yoz.d, yoz.l, yoz.theta, g);
  rep.xoz.response_label =
      classify_responses(Plane::XOZ, F.F_x, F.F_z, F.M_y, x.l, g, tol);
  rep.yoz.response_label =
      classify_responses(Plane::YOZ, F.F_y, F.F_z, F.M_x, x.l, g, tol);
  if (F.F_z > tol.eps_force) {
    rep.xoz.u = F.F_x / F.F_z;
    rep.xoz.v = F.M_y / (g.R * F.F_z);
    rep.yoz.u = F.F_y / F.F_z;
    rep.yoz.v = F.M_x / (g.R * F.F_z);
  }
  rep.xoz.match = rep.xoz.feature_label == rep.xoz.response_label;
  rep.yoz.match = rep.yoz.feature_label == rep.yoz.response_label;
  return rep;
}

}  // namespace pegsim
