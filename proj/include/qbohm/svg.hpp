#pragma once

// Small self-contained SVG line plots: stacked panels, linear axes, legend.
// Output is fully deterministic (fixed formatting, no timestamps).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

namespace qbohm {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

struct PlotPanel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
};

namespace detail {

inline std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

inline const char* series_color(std::size_t i) {
  static const char* palette[] = {"#1f6fb4", "#c23b3b", "#2c8a4b", "#8a5ac2", "#b07d2a"};
  return palette[i % 5];
}

}  // namespace detail

inline void write_svg(std::ostream& os, const std::vector<PlotPanel>& panels, int width = 640,
                      int panel_height = 300) {
  const int margin_l = 70, margin_r = 20, margin_t = 36, margin_b = 48;
  const int total_h = panel_height * static_cast<int>(panels.size());
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << total_h
     << "\" viewBox=\"0 0 " << width << ' ' << total_h << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const PlotPanel& panel = panels[p];
    const double top = static_cast<double>(p) * panel_height + margin_t;
    const double left = margin_l;
    const double plot_w = width - margin_l - margin_r;
    const double plot_h = panel_height - margin_t - margin_b;

    double x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
    bool any = false;
    for (const auto& s : panel.series)
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        if (!any) {
          x_lo = x_hi = s.x[i];
          y_lo = y_hi = s.y[i];
          any = true;
        } else {
          x_lo = std::min(x_lo, s.x[i]);
          x_hi = std::max(x_hi, s.x[i]);
          y_lo = std::min(y_lo, s.y[i]);
          y_hi = std::max(y_hi, s.y[i]);
        }
      }
    if (!any) {
      x_lo = y_lo = 0.0;
      x_hi = y_hi = 1.0;
    }
    if (x_hi == x_lo) x_hi = x_lo + 1.0;
    if (y_hi == y_lo) y_hi = y_lo + 1.0;
    const double y_pad = 0.05 * (y_hi - y_lo);
    y_lo -= y_pad;
    y_hi += y_pad;

    auto px = [&](double v) { return left + (v - x_lo) / (x_hi - x_lo) * plot_w; };
    auto py = [&](double v) { return top + plot_h - (v - y_lo) / (y_hi - y_lo) * plot_h; };

    os << "<rect x=\"" << detail::fmt2(left) << "\" y=\"" << detail::fmt2(top) << "\" width=\""
       << detail::fmt2(plot_w) << "\" height=\"" << detail::fmt2(plot_h)
       << "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";

    for (int t = 0; t <= 4; ++t) {
      const double fx = x_lo + (x_hi - x_lo) * t / 4.0;
      const double fy = y_lo + (y_hi - y_lo) * t / 4.0;
      const double gx = px(fx), gy = py(fy);
      os << "<line x1=\"" << detail::fmt2(gx) << "\" y1=\"" << detail::fmt2(top + plot_h)
         << "\" x2=\"" << detail::fmt2(gx) << "\" y2=\"" << detail::fmt2(top + plot_h + 5)
         << "\" stroke=\"#444444\"/>\n";
      os << "<text x=\"" << detail::fmt2(gx) << "\" y=\"" << detail::fmt2(top + plot_h + 18)
         << "\" font-size=\"11\" text-anchor=\"middle\" font-family=\"sans-serif\">"
         << detail::fmt_tick(fx) << "</text>\n";
      os << "<line x1=\"" << detail::fmt2(left - 5) << "\" y1=\"" << detail::fmt2(gy)
         << "\" x2=\"" << detail::fmt2(left) << "\" y2=\"" << detail::fmt2(gy)
         << "\" stroke=\"#444444\"/>\n";
      os << "<text x=\"" << detail::fmt2(left - 8) << "\" y=\"" << detail::fmt2(gy + 4)
         << "\" font-size=\"11\" text-anchor=\"end\" font-family=\"sans-serif\">"
         << detail::fmt_tick(fy) << "</text>\n";
    }

    for (std::size_t s = 0; s < panel.series.size(); ++s) {
      const auto& ser = panel.series[s];
      bool open = false;
      std::string path;
      for (std::size_t i = 0; i < ser.x.size(); ++i) {
        if (!std::isfinite(ser.x[i]) || !std::isfinite(ser.y[i])) {
          open = false;
          continue;
        }
        path += open ? " L " : " M ";
        path += detail::fmt2(px(ser.x[i]));
        path += ' ';
        path += detail::fmt2(py(ser.y[i]));
        open = true;
      }
      if (path.empty()) continue;
      os << "<path d=\"" << path << "\" fill=\"none\" stroke=\"" << detail::series_color(s)
         << "\" stroke-width=\"1.5\"" << (ser.dashed ? " stroke-dasharray=\"6 4\"" : "")
         << "/>\n";
      const double lx = left + plot_w - 120, ly = top + 14 + 16.0 * static_cast<double>(s);
      os << "<line x1=\"" << detail::fmt2(lx) << "\" y1=\"" << detail::fmt2(ly - 4) << "\" x2=\""
         << detail::fmt2(lx + 22) << "\" y2=\"" << detail::fmt2(ly - 4) << "\" stroke=\""
         << detail::series_color(s) << "\" stroke-width=\"1.5\""
         << (ser.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
      os << "<text x=\"" << detail::fmt2(lx + 27) << "\" y=\"" << detail::fmt2(ly)
         << "\" font-size=\"11\" font-family=\"sans-serif\">" << ser.label << "</text>\n";
    }

    os << "<text x=\"" << detail::fmt2(left + plot_w / 2) << "\" y=\""
       << detail::fmt2(top - 12) << "\" font-size=\"13\" text-anchor=\"middle\" "
          "font-family=\"sans-serif\" font-weight=\"bold\">"
       << panel.title << "</text>\n";
    os << "<text x=\"" << detail::fmt2(left + plot_w / 2) << "\" y=\""
       << detail::fmt2(top + plot_h + 36) << "\" font-size=\"12\" text-anchor=\"middle\" "
          "font-family=\"sans-serif\">"
       << panel.x_label << "</text>\n";
    os << "<text x=\"16\" y=\"" << detail::fmt2(top + plot_h / 2)
       << "\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\" transform=\"rotate(-90 16 "
       << detail::fmt2(top + plot_h / 2) << ")\">" << panel.y_label << "</text>\n";
  }
  os << "</svg>\n";
}

inline void write_svg_file(const std::string& path, const std::vector<PlotPanel>& panels,
                           int width = 640, int panel_height = 300) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_svg(os, panels, width, panel_height);
}

}  // namespace qbohm
