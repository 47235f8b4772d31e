#include "pegsim/contact_model.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace pegsim {

namespace {

constexpr double kPi = std::numbers::pi;

void validate_feature(const FeatureVector& x) {
  if (!std::isfinite(x.d_x) || !std::isfinite(x.d_y) || !std::isfinite(x.l) ||
      !std::isfinite(x.theta_x) || !std::isfinite(x.theta_y)) {
    throw DomainError("feature vector must be finite");
  }
  if (x.l < 0.0) throw DomainError("insertion depth must be >= 0");
  if (!(std::abs(x.theta_x) < kPi / 2.0) ||
      !(std::abs(x.theta_y) < kPi / 2.0)) {
    throw DomainError("axis angles must lie in (-pi/2, pi/2)");
  }
}

struct AngularTable {
  std::vector<double> cos_a;
  std::vector<double> sin_a;
  std::vector<double> w;  // includes the angular step
};

// Midpoint nodes sit symmetrically about 0. When n is a multiple of 4 the
// trig values are filled by quadrant reflection so mirror-image sections
// cancel exactly instead of to libm rounding.
AngularTable angular_midpoint(int n) {
  AngularTable t;
  t.cos_a.resize(n);
  t.sin_a.resize(n);
  t.w.assign(n, 2.0 * kPi / n);
  const double h = 2.0 * kPi / n;
  if (n % 4 == 0) {
    for (int m = 0; m < n / 4; ++m) {
      const double a = (m + 0.5) * h;  // first quadrant
      const double c = std::cos(a);
      const double s = std::sin(a);
      t.cos_a[n / 2 + m] = c;      // a
      t.sin_a[n / 2 + m] = s;
      t.cos_a[n / 2 - 1 - m] = c;  // -a
      t.sin_a[n / 2 - 1 - m] = -s;
      t.cos_a[n - 1 - m] = -c;     // pi - a
      t.sin_a[n - 1 - m] = s;
      t.cos_a[m] = -c;             // a - pi
      t.sin_a[m] = -s;
    }
  } else {
    for (int j = 0; j < n; ++j) {
      const double a = (j + 0.5 - n / 2.0) * h;
      t.cos_a[j] = std::cos(a);
      t.sin_a[j] = std::sin(a);
    }
  }
  return t;
}

// Closed trapezoid over [-pi, pi] with halved end weights; the end nodes
// coincide on the circle, so this matches the periodic rule.
AngularTable angular_trapezoid(int n) {
  AngularTable t;
  t.cos_a.resize(n + 1);
  t.sin_a.resize(n + 1);
  t.w.assign(n + 1, 2.0 * kPi / n);
  t.w.front() *= 0.5;
  t.w.back() *= 0.5;
  const double h = 2.0 * kPi / n;
  for (int j = 0; j <= n; ++j) {
    const double a = -kPi + j * h;
    t.cos_a[j] = std::cos(a);
    t.sin_a[j] = std::sin(a);
  }
  return t;
}

struct AxialTable {
  std::vector<double> s_hat;  // window coordinate centered on the slice band
  std::vector<double> w;
};

AxialTable axial_midpoint(int n, double s_u) {
  AxialTable t;
  t.s_hat.resize(n);
  t.w.assign(n, s_u / n);
  const double ds = s_u / n;
  for (int i = 0; i < n; ++i) t.s_hat[i] = (i + 0.5 - n / 2.0) * ds;
  return t;
}

AxialTable axial_trapezoid(int n, double s_u) {
  AxialTable t;
  t.s_hat.resize(n + 1);
  t.w.assign(n + 1, s_u / n);
  t.w.front() *= 0.5;
  t.w.back() *= 0.5;
  const double ds = s_u / n;
  for (int i = 0; i <= n; ++i) t.s_hat[i] = i * ds - 0.5 * s_u;
  return t;
}

ResponseVector integrate(const FeatureVector& x, const Geometry& g, int n_s,
                         int n_alpha, QuadratureRule rule) {
  const PolarTilt tilt = from_axis_angles(x.theta_x, x.theta_y);
  const double cth = std::cos(tilt.theta);
  const double cth2 = cth * cth;
  const double s_u = x.l * cth;
  const double tan_ty = std::tan(x.theta_y);
  const double tan_tx = std::tan(x.theta_x);
  // Moment lever from the contact slice up to the sensor point, including
  // the friction offset; written about the window center.
  const double lever0 = g.L + g.H - 0.5 * s_u + g.mu * g.R;
  const double r2 = g.r * g.r;

  const bool mid = rule == QuadratureRule::midpoint;
  const AngularTable at = mid ? angular_midpoint(n_alpha)
                              : angular_trapezoid(n_alpha);
  const AxialTable ax = mid ? axial_midpoint(n_s, s_u)
                            : axial_trapezoid(n_s, s_u);

  double f_x = 0.0, f_y = 0.0, f_z = 0.0, m_x = 0.0, m_y = 0.0;
  for (std::size_t i = 0; i < ax.s_hat.size(); ++i) {
    const double sh = ax.s_hat[i];
    const double o_px = x.d_x + sh * tan_ty;
    const double o_py = x.d_y + sh * tan_tx;
    const double lever = lever0 + sh;
    const double C = o_px * o_px * cth2 + o_py * o_py - r2;
    const double ws = ax.w[i];
    for (std::size_t j = 0; j < at.cos_a.size(); ++j) {
      const double ca = at.cos_a[j];
      const double sa = at.sin_a[j];
      const double A = ca * ca * cth2 + sa * sa;
      const double B = -2.0 * (o_px * ca * cth2 + o_py * sa);
      const double disc = B * B - 4.0 * A * C;
      if (disc < 0.0) continue;              // ray misses the section
      const double root = (-B + std::sqrt(disc)) / (2.0 * A);
      if (root <= g.R) continue;             // no wall strain
      const double p = g.k * (root - g.R) / g.R;
      const double w = ws * at.w[j] * p;
      f_x += w * ca;
      f_y += w * sa;
      f_z += w;
      m_x += w * sa * lever;
      m_y += w * ca * lever;
    }
  }

  ResponseVector out;
  out.F_x = g.R * f_x;
  out.F_y = g.R * f_y;
  out.F_z = g.mu * g.R * f_z;
  out.M_x = g.R * m_x;
  out.M_y = g.R * m_y;
  return out;
}

}  // namespace

void Geometry::validate() const {
  if (!(R > 0.0) || !(r > 0.0) || !(L > 0.0) || !(H > 0.0) || !(k > 0.0)) {
    throw DomainError("geometry lengths and stiffness must be positive");
  }
  if (!(mu >= 0.0)) throw DomainError("friction coefficient must be >= 0");
  if (std::abs(R - r) / R >= 0.05) {
    throw DomainError("radial mismatch exceeds the precision-fit regime");
  }
}

Vec5 ResponseVector::vec() const {
  Vec5 v;
  v << F_x, F_y, F_z, M_x, M_y;
  return v;
}

void QuadratureSpec::validate() const {
  if (n_s < 2) throw ConfigError("quadrature needs at least 2 axial slices");
  if (n_alpha < 8 || n_alpha % 2 != 0) {
    throw ConfigError("angular sample count must be even and >= 8");
  }
  if (rule != QuadratureRule::midpoint && rule != QuadratureRule::trapezoid) {
    throw ConfigError("unknown quadrature rule");
  }
}

std::pair<double, double> slice_center(const FeatureVector& x,
                                       const Geometry& g, double s) {
  (void)g;
  validate_feature(x);
  const PolarTilt tilt = from_axis_angles(x.theta_x, x.theta_y);
  const double s_u = x.l * std::cos(tilt.theta);
  if (s < 0.0 || s > s_u) {
    throw DomainError("slice coordinate outside the contact window");
  }
  const double sh = s - 0.5 * s_u;
  return {x.d_x + sh * std::tan(x.theta_y), x.d_y + sh * std::tan(x.theta_x)};
}

double radial_gap(const FeatureVector& x, const Geometry& g, double s,
                  double alpha) {
  const auto [o_px, o_py] = slice_center(x, g, s);
  const double cth = std::cos(from_axis_angles(x.theta_x, x.theta_y).theta);
  const double cth2 = cth * cth;
  const double ca = std::cos(alpha);
  const double sa = std::sin(alpha);
  const double A = ca * ca * cth2 + sa * sa;
  const double B = -2.0 * (o_px * ca * cth2 + o_py * sa);
  const double C = o_px * o_px * cth2 + o_py * o_py - g.r * g.r;
  const double disc = B * B - 4.0 * A * C;
  if (disc < 0.0) return 0.0;
  const double root = (-B + std::sqrt(disc)) / (2.0 * A);
  return root > 0.0 ? root : 0.0;
}

double stress(double O_hG, const Geometry& g) {
  return O_hG >= g.R ? g.k * (O_hG - g.R) / g.R : 0.0;
}

ResponseVector respond(const FeatureVector& x, const Geometry& g,
                       const QuadratureSpec& q) {
  q.validate();
  g.validate();
  validate_feature(x);
  if (x.l == 0.0) return {};
  return integrate(x, g, q.n_s, q.n_alpha, q.rule);
}

ResponseVector respond_oracle(const FeatureVector& x, const Geometry& g,
                              const QuadratureSpec& q) {
  q.validate();
  g.validate();
  validate_feature(x);
  if (x.l == 0.0) return {};
  const QuadratureRule alt = q.rule == QuadratureRule::midpoint
                                 ? QuadratureRule::trapezoid
                                 : QuadratureRule::midpoint;
  return integrate(x, g, 4 * q.n_s, 4 * q.n_alpha, alt);
}

}  // namespace pegsim
