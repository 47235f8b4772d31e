#pragma once

#include <utility>

#include "pegsim/errors.hpp"
#include "pegsim/geometry.hpp"

namespace pegsim {

// Peg/hole pair and contact constants. Only the precision-fit regime is
// supported: the radial mismatch must stay under 5% of the hole radius.
struct Geometry {
  double R = 5.05e-3;  // hole radius, m
  double r = 5.04e-3;  // peg radius, m
  double L = 10e-3;    // hole depth, m
  double H = 5e-3;     // wall thickness below the hole bottom, m
  // Wall stiffness, Pa-like (pressure per unit radial strain). The default
  // seats the 0.01 mm interference pair at 50 N axial resistance when fully
  // inserted and centered: k = F_seat / (mu * delta * 2 pi * L).
  double k = 7.957747154594767e7;
  double mu = 1.0;  // friction coefficient

  bool clearance_fit() const { return R >= r; }
  void validate() const;  // throws DomainError
};

// Equivalent wrench at the sensor point, expressed on the hole frame axes.
// F_z is the friction drag opposing insertion and is nonnegative whenever
// contact exists.
struct ResponseVector {
  double F_x = 0.0;  // N
  double F_y = 0.0;  // N
  double F_z = 0.0;  // N
  double M_x = 0.0;  // N*m
  double M_y = 0.0;  // N*m

  Vec5 vec() const;
};

enum class QuadratureRule { midpoint, trapezoid };

struct QuadratureSpec {
  int n_s = 64;       // axial slices, >= 2
  int n_alpha = 256;  // angular samples, even and >= 8
  QuadratureRule rule = QuadratureRule::midpoint;
  void validate() const;  // throws ConfigError
};

// Center of the tilted peg cross-section at axial window coordinate
// s in [0, l cos(theta)], measured from the deepest slice. Returns the pair
// (O_px, O_py) in the hole frame. Throws DomainError when s is outside
// the contact window.
std::pair<double, double> slice_center(const FeatureVector& x,
                                       const Geometry& g, double s);

// Distance from the hole axis to the far boundary of the peg cross-section
// along the ray at polar angle alpha; 0 when the ray misses the section.
double radial_gap(const FeatureVector& x, const Geometry& g, double s,
                  double alpha);

// Radial contact pressure from wall strain; zero until the section boundary
// reaches the hole wall, continuous at the onset.
double stress(double O_hG, const Geometry& g);

// Integrates the contact pressure over the inserted surface and returns the
// equivalent wrench. l = 0 short-circuits to the zero wrench.
ResponseVector respond(const FeatureVector& x, const Geometry& g,
                       const QuadratureSpec& q = {});

// Same contract as respond() but evaluated with the alternate quadrature
// rule at 4x the sample counts. Kept as an independent verification path
// for tests; not used by the simulation loop.
ResponseVector respond_oracle(const FeatureVector& x, const Geometry& g,
                              const QuadratureSpec& q = {});

}  // namespace pegsim
