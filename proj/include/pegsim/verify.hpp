#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pegsim/state_map.hpp"

namespace pegsim {

struct CheckResult {
  std::string name;
  bool pass = true;
  bool skipped = false;  // counted neither as pass nor fail
  std::string detail;
};

// Self-check configuration. The identity checks (symmetry, planar ratio,
// line slope, mirror antisymmetry, direction-row null) hold to rounding
// error and take the `identity_scale` multiplier on their bounds; the
// strict profile sets it to 0.1. Sampled/statistical thresholds
// (convergence 0.1%, oracle 0.5%, agreement 95%) are contract constants
// and stay fixed across profiles.
struct VerifyOptions {
  std::vector<Geometry> geometries;  // empty -> one clearance + one interference fit
  QuadratureSpec quadrature;
  BoundaryTolerances tol;
  double identity_scale = 1.0;
  std::uint64_t seed = 0x5eedULL;
};

// Runs the model invariant suite: lateral symmetry, planar moment ratio,
// response-line slope, friction bound (skipped with notice when mu = 0),
// grid convergence with oracle cross-check, margin-filtered classifier
// agreement, mirror antisymmetry, and direction-matrix row nulling.
std::vector<CheckResult> run_verification(const VerifyOptions& opt);

// True when no check failed (skips allowed).
bool all_passed(const std::vector<CheckResult>& results);

}  // namespace pegsim
