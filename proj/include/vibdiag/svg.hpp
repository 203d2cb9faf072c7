#pragma once

#include <span>
#include <string>
#include <vector>

namespace vibdiag::svg {

struct Marker {
  double x = 0.0;
  std::string label;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 900;
  int height = 320;
  std::vector<Marker> markers;  // vertical dashed lines
};

/// Static line plot. Long series are reduced to a min/max envelope per
/// pixel column so the file size stays bounded.
std::string line_plot(const PlotSpec& spec, std::span<const double> x, std::span<const double> y);

}  // namespace vibdiag::svg
