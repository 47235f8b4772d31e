#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "pegsim/state_map.hpp"

namespace pegsim {

struct Series {
  std::string name;
  std::string color;  // any SVG color token
  std::vector<std::pair<double, double>> points;
};

// Self-contained SVG line chart: axes, ticks, legend, one polyline per
// series. Ranges come from the data.
void write_line_plot(const std::filesystem::path& file, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<Series>& series);

// Feature-plane grid colored by state label. `labels` is row-major with
// n_x varying fastest: index = iy * n_x + ix; cell (0,0) sits at
// (x_min, y_min). Axis ranges are the cell-center extremes.
void write_region_map(const std::filesystem::path& file, const std::string& title,
                      const std::string& x_label, const std::string& y_label, int n_x, int n_y,
                      const std::vector<StateLabel>& labels, double x_min, double x_max,
                      double y_min, double y_max);

}  // namespace pegsim
