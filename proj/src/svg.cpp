#include "vibdiag/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace vibdiag::svg {

namespace {

constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 30;
constexpr int kMarginBottom = 45;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string line_plot(const PlotSpec& spec, std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  const double plot_w = spec.width - kMarginLeft - kMarginRight;
  const double plot_h = spec.height - kMarginTop - kMarginBottom;

  double x_min = n ? x[0] : 0.0;
  double x_max = n ? x[n - 1] : 1.0;
  double y_min = 0.0;
  double y_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    y_min = std::min(y_min, y[i]);
    y_max = std::max(y_max, y[i]);
  }
  if (x_max <= x_min) x_max = x_min + 1.0;
  if (y_max <= y_min) y_max = y_min + 1.0;
  const double pad = 0.05 * (y_max - y_min);
  y_max += pad;
  if (y_min < 0.0) y_min -= pad;

  const auto px = [&](double v) { return kMarginLeft + (v - x_min) / (x_max - x_min) * plot_w; };
  const auto py = [&](double v) { return kMarginTop + (y_max - v) / (y_max - y_min) * plot_h; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
      << spec.height << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << spec.width / 2 << "\" y=\"18\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">"
      << escape(spec.title) << "</text>\n";
  out << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\"" << num(plot_w)
      << "\" height=\"" << num(plot_h) << "\" fill=\"none\" stroke=\"#444\"/>\n";

  for (int t = 0; t <= 4; ++t) {
    const double xv = x_min + (x_max - x_min) * t / 4.0;
    const double yv = y_min + (y_max - y_min) * t / 4.0;
    out << "<text x=\"" << num(px(xv)) << "\" y=\"" << spec.height - kMarginBottom + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << num(xv)
        << "</text>\n";
    out << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << num(py(yv) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(yv)
        << "</text>\n";
  }
  out << "<text x=\"" << num(kMarginLeft + plot_w / 2) << "\" y=\"" << spec.height - 8
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << escape(spec.x_label) << "</text>\n";
  out << "<text x=\"14\" y=\"" << num(kMarginTop + plot_h / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 14 "
      << num(kMarginTop + plot_h / 2) << ")\">" << escape(spec.y_label) << "</text>\n";

  for (const auto& m : spec.markers) {
    if (m.x < x_min || m.x > x_max) continue;
    out << "<line x1=\"" << num(px(m.x)) << "\" y1=\"" << kMarginTop << "\" x2=\"" << num(px(m.x))
        << "\" y2=\"" << num(kMarginTop + plot_h)
        << "\" stroke=\"#d62728\" stroke-dasharray=\"4 3\" stroke-width=\"1\"/>\n";
    if (!m.label.empty()) {
      out << "<text x=\"" << num(px(m.x) + 2) << "\" y=\"" << kMarginTop + 12
          << "\" font-family=\"sans-serif\" font-size=\"10\" fill=\"#d62728\">" << escape(m.label)
          << "</text>\n";
    }
  }

  // Min/max per pixel column.
  const auto columns = static_cast<std::size_t>(std::max(1.0, plot_w));
  out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1\" points=\"";
  if (n <= 2 * columns) {
    for (std::size_t i = 0; i < n; ++i) out << num(px(x[i])) << ',' << num(py(y[i])) << ' ';
  } else {
    for (std::size_t c = 0; c < columns; ++c) {
      const std::size_t a = c * n / columns;
      const std::size_t b = std::max(a + 1, (c + 1) * n / columns);
      const auto [lo, hi] = std::minmax_element(y.begin() + a, y.begin() + b);
      const auto ilo = static_cast<std::size_t>(lo - y.begin());
      const auto ihi = static_cast<std::size_t>(hi - y.begin());
      const std::size_t first = std::min(ilo, ihi);
      const std::size_t second = std::max(ilo, ihi);
      out << num(px(x[first])) << ',' << num(py(y[first])) << ' ';
      if (second != first) out << num(px(x[second])) << ',' << num(py(y[second])) << ' ';
    }
  }
  out << "\"/>\n</svg>\n";
  return out.str();
}

}  // namespace vibdiag::svg
