#pragma once

#include <string>
#include <vector>

namespace acr::svg {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  // Optional shaded band; either empty or the same length as y.
  std::vector<double> lower;
  std::vector<double> upper;
};

struct Axes {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  int width = 720;
  int height = 440;
};

// Standalone SVG line chart with axes, ticks and a legend. Output depends only
// on the input. Throws ValidationError for an empty series list, mismatched
// lengths, or a non-finite value (naming the series and index).
std::string render_svg(const std::vector<Series>& series, const Axes& axes);

}  // namespace acr::svg
