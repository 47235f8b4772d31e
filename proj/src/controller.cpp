#include "pegsim/controller.hpp"

#include <cmath>

namespace pegsim {

namespace {

DirectionMatrix blend_matrix(double line_tilt, const Geometry& g) {
  DirectionMatrix A = DirectionMatrix::Zero();
  A(0, 0) = 1.0;  // d_x <- F_x
  A(1, 1) = 1.0;  // d_y <- F_y
  A(2, 2) = 1.0;  // l   <- F_z
  const double s = std::sin(line_tilt);
  const double c = std::cos(line_tilt);
  A(3, 1) = -s;          // theta_x <- F_y
  A(3, 3) = c / g.R;     // theta_x <- M_x
  A(4, 0) = -s;          // theta_y <- F_x
  A(4, 4) = c / g.R;     // theta_y <- M_y
  return A;
}

FeatureVector solve_adjustment(const ControllerState& st,
                               const DirectionMatrix& A,
                               const ResponseVector& F_ext) {
  const Vec5 M = st.params.M();
  const Vec5 D = st.params.D();
  const Vec5 K = st.params.K();
  const double dt = st.dt;
  const Vec5 rhs =
      A * F_ext.vec() +
      M.cwiseProduct(2.0 * st.x_d_prev.vec() - st.x_d_prev2.vec()) /
          (dt * dt) +
      D.cwiseProduct(st.x_d_prev.vec()) / dt;
  const Vec5 lhs = M / (dt * dt) + D / dt + K;
  return FeatureVector::from_vec(rhs.cwiseQuotient(lhs));
}

void advance_feed(Vec5& rfr, const ControllerState& st, const Geometry& g) {
  rfr[2] = std::min(rfr[2] + st.v_feed * st.dt, g.L);
}

}  // namespace

ComplianceParams ComplianceParams::preset(const std::string& label) {
  ComplianceParams p;  // lateral and depth triples shared by all presets
  double m_o = 0.0, k_o = 0.0;
  if (label == "1") {
    p.M_dp = 1e5; p.K_dp = 1e7; m_o = 1e1; k_o = 1e3;
  } else if (label == "2") {
    p.M_dp = 1e4; p.K_dp = 1e6; m_o = 1e0; k_o = 1e2;
  } else if (label == "3") {
    p.M_dp = 1e4; p.K_dp = 1e6; m_o = 1e1; k_o = 1e3;
  } else if (label == "4") {
    p.M_dp = 1e4; p.K_dp = 1e6; m_o = 1e2; k_o = 1e4;
  } else if (label == "5") {
    p.M_dp = 1e3; p.K_dp = 1e5; m_o = 1e-1; k_o = 1e1;
  } else {
    throw ConfigError("unknown compliance preset '" + label + "'");
  }
  p.M_do = m_o;
  p.K_do = k_o;
  p.M_dl = 1e10;
  p.K_dl = 1e12;
  p.D_dp = std::sqrt(p.M_dp * p.K_dp);
  p.D_do = std::sqrt(p.M_do * p.K_do);
  p.D_dl = std::sqrt(p.M_dl * p.K_dl);
  return p;
}

Vec5 ComplianceParams::M() const {
  Vec5 v;
  v << M_dp, M_dp, M_dl, M_do, M_do;
  return v;
}

Vec5 ComplianceParams::D() const {
  Vec5 v;
  v << D_dp, D_dp, D_dl, D_do, D_do;
  return v;
}

Vec5 ComplianceParams::K() const {
  Vec5 v;
  v << K_dp, K_dp, K_dl, K_do, K_do;
  return v;
}

void ComplianceParams::validate() const {
  for (double g : {M_dp, D_dp, K_dp, M_do, D_do, K_do, M_dl, D_dl, K_dl}) {
    if (!(g > 0.0)) throw DomainError("compliance gains must be positive");
  }
}

Vec5 ControllerState::default_x_d_limit() {
  Vec5 v;
  v << 1e-8, 1e-8, 1e-8, 1e-7, 1e-7;
  return v;
}

void ControllerState::validate() const {
  params.validate();
  if (!(dt > 0.0)) throw DomainError("controller step must be positive");
  if ((x_d_limit.array() < 0.0).any()) {
    throw DomainError("deadbands must be >= 0");
  }
  if (!(F_limit > 0.0) || !(M_limit > 0.0)) {
    throw DomainError("abort limits must be positive");
  }
  if (!(v_feed >= 0.0)) throw DomainError("feed rate must be >= 0");
}

double gamma(double l, const Geometry& g) {
  return std::atan(boundary_slope(l, g));
}

DirectionMatrix direction_matrix(double l, const Geometry& g) {
  return blend_matrix(gamma(l, g), g);
}

StepResult fbcc_step(const ControllerState& st, const ResponseVector& F_ext,
                     double l_now, const Geometry& g) {
  st.validate();
  const DirectionMatrix A = direction_matrix(l_now, g);
  const FeatureVector x_d = solve_adjustment(st, A, F_ext);

  Vec5 rfr = st.x_rfr.vec();
  const Vec5 xd = x_d.vec();
  for (int i = 0; i < 5; ++i) {
    if (std::abs(xd[i]) > st.x_d_limit[i]) rfr[i] -= xd[i];
  }
  advance_feed(rfr, st, g);

  ControllerState next = st;
  next.x_rfr = FeatureVector::from_vec(rfr);
  next.x_d_prev2 = st.x_d_prev;
  next.x_d_prev = x_d;
  return {next.x_rfr, next, x_d};
}

StepResult admittance_step(const ControllerState& st,
                           const ResponseVector& F_ext, double l_now,
                           const Geometry& g) {
  (void)l_now;  // the baseline ignores how deep the contact line sits
  st.validate();
  const DirectionMatrix A = blend_matrix(0.0, g);
  const FeatureVector x_d = solve_adjustment(st, A, F_ext);

  Vec5 rfr = st.x_rfr.vec();
  advance_feed(rfr, st, g);

  ControllerState next = st;
  next.x_rfr = FeatureVector::from_vec(rfr);
  next.x_d_prev2 = st.x_d_prev;
  next.x_d_prev = x_d;
  return {FeatureVector::from_vec(rfr - x_d.vec()), next, x_d};
}

StepVerdict should_terminate(const ControllerState& st,
                             const ResponseVector& F_ext, double l_now,
                             double L, double depth_tol) {
  if (l_now >= L - depth_tol) return StepVerdict::success;
  if (std::abs(F_ext.F_x) > st.F_limit || std::abs(F_ext.F_y) > st.F_limit ||
      std::abs(F_ext.F_z) > st.F_limit || std::abs(F_ext.M_x) > st.M_limit ||
      std::abs(F_ext.M_y) > st.M_limit) {
    return StepVerdict::force_abort;
  }
  return StepVerdict::proceed;
}

}  // namespace pegsim
