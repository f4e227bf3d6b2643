#include "dpt/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace dpt::svg {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};
constexpr int kPaletteSize = 6;
constexpr double kMarginL = 64.0, kMarginR = 16.0;
constexpr double kMarginT = 36.0, kMarginB = 48.0;

std::string f6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = 0.0, hi = 1.0;

  void widen(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

Range finite_range(const std::vector<const std::vector<double>*>& cols) {
  Range r;
  bool seen = false;
  for (const auto* col : cols) {
    for (double v : *col) {
      if (!std::isfinite(v)) continue;
      if (!seen) {
        r.lo = r.hi = v;
        seen = true;
      } else {
        r.widen(v);
      }
    }
  }
  if (!seen) throw std::invalid_argument("no finite data to plot");
  if (r.hi == r.lo) {
    r.lo -= 0.5;
    r.hi += 0.5;
  }
  return r;
}

struct Mapper {
  Range rx, ry;
  double w = 0.0, h = 0.0;

  double X(double x) const {
    return kMarginL + (x - rx.lo) / (rx.hi - rx.lo) * w;
  }
  double Y(double y) const {
    return kMarginT + h - (y - ry.lo) / (ry.hi - ry.lo) * h;
  }
};

void axes(std::string& s, const Mapper& m, const std::string& title,
          const std::string& xl, const std::string& yl) {
  const double x0 = kMarginL, x1 = kMarginL + m.w;
  const double y0 = kMarginT, y1 = kMarginT + m.h;
  s += "<rect x=\"" + f6(x0) + "\" y=\"" + f6(y0) + "\" width=\"" + f6(m.w) +
       "\" height=\"" + f6(m.h) +
       "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";
  s += "<text x=\"" + f6((x0 + x1) / 2) + "\" y=\"" + f6(kMarginT - 12) +
       "\" text-anchor=\"middle\" font-size=\"15\">" + escape(title) +
       "</text>\n";
  s += "<text x=\"" + f6((x0 + x1) / 2) + "\" y=\"" + f6(y1 + 36) +
       "\" text-anchor=\"middle\" font-size=\"13\">" + escape(xl) +
       "</text>\n";
  s += "<text x=\"14\" y=\"" + f6((y0 + y1) / 2) +
       "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 14 " +
       f6((y0 + y1) / 2) + ")\">" + escape(yl) + "</text>\n";
  // Corner tick labels: enough to read scales off the plot.
  s += "<text x=\"" + f6(x0) + "\" y=\"" + f6(y1 + 16) +
       "\" text-anchor=\"middle\" font-size=\"11\">" + f6(m.rx.lo) +
       "</text>\n";
  s += "<text x=\"" + f6(x1) + "\" y=\"" + f6(y1 + 16) +
       "\" text-anchor=\"middle\" font-size=\"11\">" + f6(m.rx.hi) +
       "</text>\n";
  s += "<text x=\"" + f6(x0 - 6) + "\" y=\"" + f6(y1 + 4) +
       "\" text-anchor=\"end\" font-size=\"11\">" + f6(m.ry.lo) + "</text>\n";
  s += "<text x=\"" + f6(x0 - 6) + "\" y=\"" + f6(y0 + 4) +
       "\" text-anchor=\"end\" font-size=\"11\">" + f6(m.ry.hi) + "</text>\n";
}

}  // namespace

std::string render_line_svg(const LinePlot& plot) {
  if (plot.series.empty()) throw std::invalid_argument("no series to plot");
  for (const auto& ser : plot.series) {
    if (ser.x.size() != ser.y.size()) {
      throw std::invalid_argument("series x/y length mismatch");
    }
    if (ser.x.empty()) throw std::invalid_argument("empty series");
  }
  Mapper m;
  m.w = plot.width - kMarginL - kMarginR;
  m.h = plot.height - kMarginT - kMarginB;
  std::vector<const std::vector<double>*> xs, ys;
  for (const auto& ser : plot.series) {
    xs.push_back(&ser.x);
    ys.push_back(&ser.y);
  }
  m.rx = finite_range(xs);
  m.ry = finite_range(ys);

  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                  std::to_string(plot.width) + "\" height=\"" +
                  std::to_string(plot.height) + "\" viewBox=\"0 0 " +
                  std::to_string(plot.width) + " " +
                  std::to_string(plot.height) +
                  "\" font-family=\"sans-serif\">\n"
                  "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  axes(s, m, plot.title, plot.x_label, plot.y_label);

  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const auto& ser = plot.series[k];
    const char* color = kPalette[k % kPaletteSize];
    std::string pts;
    double prev_y = 0.0;
    bool open = false;
    auto flush = [&]() {
      if (open && !pts.empty()) {
        s += "<polyline fill=\"none\" stroke=\"";
        s += color;
        s += "\" stroke-width=\"1.6\" points=\"" + pts + "\"/>\n";
      }
      pts.clear();
      open = false;
    };
    for (std::size_t i = 0; i < ser.x.size(); ++i) {
      const double x = ser.x[i], y = ser.y[i];
      if (!std::isfinite(x) || !std::isfinite(y)) {
        flush();
        continue;
      }
      if (ser.staircase && open) {
        pts += ' ' + f6(m.X(x)) + ',' + f6(m.Y(prev_y));
      }
      if (!pts.empty()) pts += ' ';
      pts += f6(m.X(x)) + ',' + f6(m.Y(y));
      prev_y = y;
      open = true;
    }
    flush();
    const double ly = kMarginT + 16 + 16 * static_cast<double>(k);
    s += "<rect x=\"" + f6(kMarginL + 8) + "\" y=\"" + f6(ly - 9) +
         "\" width=\"18\" height=\"4\" fill=\"";
    s += color;
    s += "\"/>\n<text x=\"" + f6(kMarginL + 32) + "\" y=\"" + f6(ly - 3) +
         "\" font-size=\"12\">" + escape(ser.label) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

std::string render_heatmap_svg(const Heatmap& map) {
  const std::size_t nx = map.x.size(), ny = map.y.size();
  if (nx == 0 || ny == 0 || map.value.size() != nx * ny) {
    throw std::invalid_argument("heatmap shape mismatch or empty");
  }
  Mapper m;
  m.w = map.width - kMarginL - kMarginR;
  m.h = map.height - kMarginT - kMarginB;
  m.rx = finite_range({&map.x});
  m.ry = finite_range({&map.y});
  const Range rv = finite_range({&map.value});

  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                  std::to_string(map.width) + "\" height=\"" +
                  std::to_string(map.height) + "\" viewBox=\"0 0 " +
                  std::to_string(map.width) + " " +
                  std::to_string(map.height) +
                  "\" font-family=\"sans-serif\">\n"
                  "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  const double cw = m.w / static_cast<double>(nx);
  const double ch = m.h / static_cast<double>(ny);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const double v = map.value[iy * nx + ix];
      double t = 0.0;
      if (std::isfinite(v) && rv.hi > rv.lo) {
        t = (v - rv.lo) / (rv.hi - rv.lo);
      }
      // Light-to-dark blue ramp.
      const int r = static_cast<int>(std::lround(247 + t * (8 - 247)));
      const int g = static_cast<int>(std::lround(251 + t * (48 - 251)));
      const int b = static_cast<int>(std::lround(255 + t * (107 - 255)));
      char fill[16];
      std::snprintf(fill, sizeof fill, "#%02x%02x%02x", r, g, b);
      // Row 0 is the lowest y value; SVG y grows downward.
      const double px = kMarginL + cw * static_cast<double>(ix);
      const double py =
          kMarginT + m.h - ch * static_cast<double>(iy + 1);
      s += "<rect class=\"cell\" x=\"" + f6(px) + "\" y=\"" + f6(py) +
           "\" width=\"" + f6(cw) + "\" height=\"" + f6(ch) + "\" fill=\"";
      s += fill;
      s += "\"/>\n";
    }
  }
  axes(s, m, map.title, map.x_label, map.y_label);
  s += "</svg>\n";
  return s;
}

}  // namespace dpt::svg
