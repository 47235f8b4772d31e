#include "pegsim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>

#include "pegsim/errors.hpp"

namespace pegsim {
namespace {

constexpr double kWidth = 860.0, kHeight = 480.0;
constexpr double kLeft = 70.0, kRight = 150.0, kTop = 42.0, kBottom = 52.0;

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '&')
      out += "&amp;";
    else if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else
      out += c;
  }
  return out;
}

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string coord(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& file) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + file.string() + "'");
  return out;
}

struct Range {
  double lo = 0.0, hi = 1.0;
  double map(double v, double a, double b) const {  // data -> pixel
    return a + (v - lo) / (hi - lo) * (b - a);
  }
};

Range padded(double lo, double hi) {
  if (!(lo < hi)) {  // degenerate or empty data
    const double pad = std::max(1.0, std::abs(lo));
    return {lo - pad, hi + pad};
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

void header(std::ofstream& out, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kLeft << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">"
      << escape(title) << "</text>\n";
}

void axes(std::ofstream& out, const Range& rx, const Range& ry, const std::string& x_label,
          const std::string& y_label) {
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  out << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0 << "\" height=\""
      << y0 - y1 << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = rx.lo + (rx.hi - rx.lo) * i / 4.0;
    const double fy = ry.lo + (ry.hi - ry.lo) * i / 4.0;
    const double px = rx.map(fx, x0, x1);
    const double py = ry.map(fy, y0, y1);
    out << "<line x1=\"" << coord(px) << "\" y1=\"" << y0 << "\" x2=\"" << coord(px)
        << "\" y2=\"" << y0 + 5 << "\" stroke=\"#444\"/>\n"
        << "<text x=\"" << coord(px) << "\" y=\"" << y0 + 18
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << num(fx)
        << "</text>\n"
        << "<line x1=\"" << x0 - 5 << "\" y1=\"" << coord(py) << "\" x2=\"" << x0 << "\" y2=\""
        << coord(py) << "\" stroke=\"#444\"/>\n"
        << "<text x=\"" << x0 - 8 << "\" y=\"" << coord(py + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << num(fy)
        << "</text>\n";
  }
  out << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 12
      << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
      << escape(x_label) << "</text>\n"
      << "<text x=\"16\" y=\"" << (y0 + y1) / 2
      << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 16 "
      << (y0 + y1) / 2 << ")\">" << escape(y_label) << "</text>\n";
}

const char* label_color(StateLabel s) {
  switch (s) {
    case StateLabel::P0: return "#4caf50";
    case StateLabel::P1: return "#2196f3";
    case StateLabel::Pm1: return "#90caf9";
    case StateLabel::D0: return "#ff9800";
    case StateLabel::Dh0: return "#ffd54f";
    case StateLabel::D1: return "#e91e63";
    case StateLabel::Dm1: return "#f48fb1";
    case StateLabel::Dh1: return "#7b1fa2";
    case StateLabel::Dhm1: return "#ce93d8";
  }
  return "#000000";
}

}  // namespace

void write_line_plot(const std::filesystem::path& file, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<Series>& series) {
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
  double ylo = xlo, yhi = -xlo;
  for (const Series& s : series) {
    for (const auto& [x, y] : s.points) {
      xlo = std::min(xlo, x);
      xhi = std::max(xhi, x);
      ylo = std::min(ylo, y);
      yhi = std::max(yhi, y);
    }
  }
  if (!std::isfinite(xlo)) xlo = xhi = 0.0;  // no points at all
  if (!std::isfinite(ylo)) ylo = yhi = 0.0;
  const Range rx = padded(xlo, xhi), ry = padded(ylo, yhi);

  std::ofstream out = open_out(file);
  header(out, title);
  axes(out, rx, ry, x_label, y_label);
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  for (const Series& s : series) {
    if (s.points.empty()) continue;
    out << "<polyline fill=\"none\" stroke=\"" << s.color
        << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : s.points)
      out << coord(rx.map(x, x0, x1)) << ',' << coord(ry.map(y, y0, y1)) << ' ';
    out << "\"/>\n";
  }
  double ly = kTop + 10;
  for (const Series& s : series) {
    out << "<line x1=\"" << x1 + 12 << "\" y1=\"" << ly << "\" x2=\"" << x1 + 34 << "\" y2=\""
        << ly << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << x1 + 40 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(s.name) << "</text>\n";
    ly += 18;
  }
  out << "</svg>\n";
  if (!out) throw ConfigError("short write to '" + file.string() + "'");
}

void write_region_map(const std::filesystem::path& file, const std::string& title,
                      const std::string& x_label, const std::string& y_label, int n_x, int n_y,
                      const std::vector<StateLabel>& labels, double x_min, double x_max,
                      double y_min, double y_max) {
  if (n_x < 1 || n_y < 1 || labels.size() != static_cast<std::size_t>(n_x) * n_y)
    throw ConfigError("region map grid size does not match label count");
  const Range rx{x_min, x_max}, ry{y_min, y_max};
  std::ofstream out = open_out(file);
  header(out, title);
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  const double cw = (x1 - x0) / n_x, ch = (y0 - y1) / n_y;
  std::set<StateLabel> seen;
  for (int iy = 0; iy < n_y; ++iy) {
    for (int ix = 0; ix < n_x; ++ix) {
      const StateLabel s = labels[static_cast<std::size_t>(iy) * n_x + ix];
      seen.insert(s);
      // Cell (ix, iy) is centered on sample (ix, iy); y grows upward.
      const double px = x0 + cw * ix;
      const double py = y0 - ch * (iy + 1);
      out << "<rect x=\"" << coord(px) << "\" y=\"" << coord(py) << "\" width=\""
          << coord(cw + 0.5) << "\" height=\"" << coord(ch + 0.5) << "\" fill=\""
          << label_color(s) << "\"/>\n";
    }
  }
  axes(out, rx, ry, x_label, y_label);
  double ly = kTop + 10;
  for (StateLabel s : seen) {
    out << "<rect x=\"" << x1 + 12 << "\" y=\"" << ly - 9 << "\" width=\"14\" height=\"12\" fill=\""
        << label_color(s) << "\"/>\n"
        << "<text x=\"" << x1 + 32 << "\" y=\"" << ly + 2
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(to_string(s))
        << "</text>\n";
    ly += 18;
  }
  out << "</svg>\n";
  if (!out) throw ConfigError("short write to '" + file.string() + "'");
}

}  // namespace pegsim
