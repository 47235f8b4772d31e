#pragma once

#include <filesystem>
#include <string>

#include "pegsim/sim.hpp"

namespace pegsim {

// Feature-plane grid request for region maps.
struct MapSpec {
  double l = 5e-3;          // m, fixed insertion depth
  int n_d = 61;             // offset samples
  int n_theta = 61;         // tilt samples
  double d_range = 1e-4;    // m, grid spans [-d_range, d_range]
  double theta_range = 2.5 * std::numbers::pi / 180.0;  // rad
  void validate() const;    // throws ConfigError
};

struct OutputSpec {
  std::string dir = "out";
  bool plots = true;
};

struct LoadedConfig {
  Scenario scenario;
  SweepSpec sweep;
  MapSpec map;
  OutputSpec output;
};

// Parses a scenario config. The schema is strict: unknown keys are
// rejected, and every dimensioned quantity must be written as an object
// {"value": <number>, "unit": "<unit>"} with a unit from the accepted set
// for its dimension (lengths m/mm, angles rad/deg, times s/ms, speeds
// m/s / mm/s, forces N, moments N*m, pressures Pa/MPa/GPa). Throws
// ConfigError with the offending field named.
LoadedConfig load_config(const std::filesystem::path& file);

// Same schema, starting from an in-memory JSON document.
LoadedConfig parse_config(const std::string& text, const std::string& name);

// Schema-strict parse that skips the semantic validation pass. Verification
// mode uses it so that a config violating a model invariant (say, an odd
// angular sample count) reaches the checks and is flagged there instead of
// being rejected at load.
LoadedConfig load_config_unchecked(const std::filesystem::path& file);

}  // namespace pegsim
