#pragma once

#include <string>
#include <vector>

// Minimal self-contained SVG plotting: enough to eyeball rate functions,
// phase staircases, envelope beats and phase diagrams without external
// tooling.  All coordinates are emitted with %.6g.

namespace dpt::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool staircase = false;  // draw piecewise-constant steps (phase plateaus)
};

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  int width = 860;
  int height = 480;
};

// Non-finite samples split a series into separate polyline segments, so
// divergences (e.g. rate-function spikes at exact zeros) leave a gap
// instead of corrupting the plot.
std::string render_line_svg(const LinePlot& plot);

struct Heatmap {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<double> x;      // column centers
  std::vector<double> y;      // row centers
  std::vector<double> value;  // row-major [iy * x.size() + ix]
  int width = 860;
  int height = 520;
};

std::string render_heatmap_svg(const Heatmap& map);

}  // namespace dpt::svg
