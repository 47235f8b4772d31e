#include "pegsim/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <system_error>

#include "pegsim/errors.hpp"

namespace pegsim {

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf.data(), end);
}

namespace {

std::ofstream open_out(const std::filesystem::path& file) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);  // binary: no platform newline rewriting
  if (!out) throw ConfigError("cannot write '" + file.string() + "'");
  return out;
}

void put_row(std::ofstream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

}  // namespace

void write_trajectory_csv(const std::filesystem::path& file,
                          const std::vector<TrajectoryRecord>& trajectory) {
  std::ofstream out = open_out(file);
  out << "t,d_x,d_y,l,theta_x,theta_y,F_x,F_y,F_z,M_x,M_y,state_xoz,state_yoz,"
         "x_d_dx,x_d_dy,x_d_l,x_d_thx,x_d_thy,gamma\n";
  for (const TrajectoryRecord& r : trajectory) {
    put_row(out, {format_double(r.t), format_double(r.x_act.d_x), format_double(r.x_act.d_y),
                  format_double(r.x_act.l), format_double(r.x_act.theta_x),
                  format_double(r.x_act.theta_y), format_double(r.F_ext.F_x),
                  format_double(r.F_ext.F_y), format_double(r.F_ext.F_z),
                  format_double(r.F_ext.M_x), format_double(r.F_ext.M_y),
                  to_string(r.state_xoz), to_string(r.state_yoz), format_double(r.x_d.d_x),
                  format_double(r.x_d.d_y), format_double(r.x_d.l), format_double(r.x_d.theta_x),
                  format_double(r.x_d.theta_y), format_double(r.gamma)});
  }
  if (!out) throw ConfigError("short write to '" + file.string() + "'");
}

void write_map_csv(const std::filesystem::path& file, const std::vector<MapCell>& cells) {
  std::ofstream out = open_out(file);
  out << "d,theta,feature_state,response_state,F_x,F_z,M_y,u,v\n";
  for (const MapCell& c : cells) {
    put_row(out, {format_double(c.d), format_double(c.theta), to_string(c.feature_state),
                  to_string(c.response_state), format_double(c.F_x), format_double(c.F_z),
                  format_double(c.M_y), c.has_uv ? format_double(c.u) : std::string(),
                  c.has_uv ? format_double(c.v) : std::string()});
  }
  if (!out) throw ConfigError("short write to '" + file.string() + "'");
}

void write_sweep_csv(const std::filesystem::path& file, const SweepReport& report) {
  std::ofstream out = open_out(file);
  out << "trial,d_x0,d_y0,theta_x0,theta_y0,success,abort_reason,end_time,peak_F_z,"
         "remaining_depth\n";
  for (std::size_t i = 0; i < report.runs.size(); ++i) {
    const FeatureVector& x0 = report.deviations[i];
    const RunMetrics& m = report.runs[i];
    put_row(out, {std::to_string(i), format_double(x0.d_x), format_double(x0.d_y),
                  format_double(x0.theta_x), format_double(x0.theta_y),
                  m.success ? "1" : "0", m.abort_reason, format_double(m.end_time),
                  format_double(m.peak.F_z), format_double(m.terminal_deviation.l)});
  }
  if (!out) throw ConfigError("short write to '" + file.string() + "'");
}

}  // namespace pegsim
