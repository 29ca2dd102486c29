#pragma once

#include <algorithm>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pkmeans/csv.hpp"

namespace pkmeans {
namespace svg {

struct Frame {
  double width = 640, height = 440;
  double left = 60, right = 20, top = 40, bottom = 45;
  double x_min = 0, x_max = 1, y_min = 0, y_max = 1;

  double px(double x) const {
    return left + (x - x_min) / (x_max - x_min) * (width - left - right);
  }
  double py(double y) const {
    return height - bottom - (y - y_min) / (y_max - y_min) * (height - top - bottom);
  }
};

inline Frame fit_frame(std::span<const double> xs, std::span<const double> ys) {
  Frame f;
  f.x_min = *std::min_element(xs.begin(), xs.end());
  f.x_max = *std::max_element(xs.begin(), xs.end());
  f.y_min = *std::min_element(ys.begin(), ys.end());
  f.y_max = *std::max_element(ys.begin(), ys.end());
  if (f.x_max == f.x_min) f.x_max = f.x_min + 1;
  if (f.y_max == f.y_min) f.y_max = f.y_min + 1;
  const double pad = 0.05 * (f.y_max - f.y_min);
  f.y_min -= pad;
  f.y_max += pad;
  return f;
}

inline void open_document(std::ofstream& out, const Frame& f, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.width << "\" height=\""
      << f.height << "\" viewBox=\"0 0 " << f.width << ' ' << f.height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << f.width / 2 << "\" y=\"22\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n"
      << "<rect x=\"" << f.left << "\" y=\"" << f.top << "\" width=\""
      << f.width - f.left - f.right << "\" height=\"" << f.height - f.top - f.bottom
      << "\" fill=\"none\" stroke=\"#444\"/>\n";
}

inline void axis_labels(std::ofstream& out, const Frame& f, const std::string& x_name,
                        const std::string& y_name) {
  out << "<text x=\"" << (f.left + f.width - f.right) / 2 << "\" y=\"" << f.height - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << x_name
      << "</text>\n";
  out << "<text x=\"" << f.left << "\" y=\"" << f.top - 6
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << y_name
      << "</text>\n";
  out << "<text x=\"" << f.left - 4 << "\" y=\"" << f.py(f.y_min) + 4
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
      << format_double(f.y_min) << "</text>\n";
  out << "<text x=\"" << f.left - 4 << "\" y=\"" << f.py(f.y_max) + 4
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
      << format_double(f.y_max) << "</text>\n";
  out << "<text x=\"" << f.px(f.x_min) << "\" y=\"" << f.height - f.bottom + 14
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
      << format_double(f.x_min) << "</text>\n";
  out << "<text x=\"" << f.px(f.x_max) << "\" y=\"" << f.height - f.bottom + 14
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
      << format_double(f.x_max) << "</text>\n";
}

inline void polyline(std::ofstream& out, const Frame& f, std::span<const double> xs,
                     std::span<const double> ys, const std::string& color) {
  out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i)
    out << f.px(xs[i]) << ',' << f.py(ys[i]) << ' ';
  out << "\"/>\n";
}

}  // namespace svg

// Penalized (or raw) error as a function of k, with the minimum marked.
inline void write_curve_svg(const std::string& path, const std::string& title,
                            std::span<const int> ks, std::span<const double> ys,
                            const std::string& y_name) {
  if (ks.empty() || ks.size() != ys.size())
    throw std::invalid_argument("write_curve_svg: mismatched or empty series");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");

  std::vector<double> xs(ks.begin(), ks.end());
  svg::Frame f = svg::fit_frame(xs, ys);
  svg::open_document(out, f, title);
  svg::axis_labels(out, f, "k", y_name);
  svg::polyline(out, f, xs, ys, "#1f77b4");

  std::size_t arg = 0;
  for (std::size_t i = 1; i < ys.size(); ++i)
    if (ys[i] < ys[arg]) arg = i;
  out << "<circle cx=\"" << f.px(xs[arg]) << "\" cy=\"" << f.py(ys[arg])
      << "\" r=\"4\" fill=\"#d62728\"/>\n";
  out << "<text x=\"" << f.px(xs[arg]) << "\" y=\"" << f.py(ys[arg]) - 8
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">k="
      << ks[arg] << "</text>\n";
  out << "</svg>\n";
  if (!out) throw std::runtime_error(path + ": write failed");
}

// Estimated vs assumed staircase; points on the diagonal are candidates.
inline void write_staircase_svg(const std::string& path, const std::string& title,
                                std::span<const int> assumed, std::span<const int> estimated) {
  if (assumed.empty() || assumed.size() != estimated.size())
    throw std::invalid_argument("write_staircase_svg: mismatched or empty series");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");

  std::vector<double> xs(assumed.begin(), assumed.end());
  std::vector<double> ys(estimated.begin(), estimated.end());
  svg::Frame f = svg::fit_frame(xs, ys);
  f.x_min = std::min(f.x_min, f.y_min);
  f.x_max = std::max(f.x_max, f.y_max);
  f.y_min = f.x_min;
  f.y_max = f.x_max;
  svg::open_document(out, f, title);
  svg::axis_labels(out, f, "assumed K", "estimated k");
  out << "<line x1=\"" << f.px(f.x_min) << "\" y1=\"" << f.py(f.x_min) << "\" x2=\""
      << f.px(f.x_max) << "\" y2=\"" << f.py(f.x_max)
      << "\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const bool hit = assumed[i] == estimated[i];
    out << "<circle cx=\"" << f.px(xs[i]) << "\" cy=\"" << f.py(ys[i]) << "\" r=\"3.5\" fill=\""
        << (hit ? "#d62728" : "#1f77b4") << "\"/>\n";
  }
  out << "</svg>\n";
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace pkmeans
