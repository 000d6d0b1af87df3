#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace bricard::svg {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

/// One chart panel: shared axes, one polyline per series.
struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
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

inline const char* stroke(size_t i) {
  static const char* palette[] = {"#c0392b", "#2980b9", "#27ae60", "#8e44ad", "#d35400"};
  return palette[i % 5];
}

}  // namespace detail

/// Stacked-panel polyline chart, SVG 1.1. Non-finite points are dropped.
inline void write_chart(std::ostream& os, const std::vector<Panel>& panels, int width = 720,
                        int panel_height = 240) {
  const int margin_left = 64, margin_right = 16, margin_top = 28, margin_bottom = 34;
  const int total_height = panel_height * static_cast<int>(panels.size());

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
     << "\" height=\"" << total_height << "\" viewBox=\"0 0 " << width << ' ' << total_height
     << "\">\n";

  for (size_t p = 0; p < panels.size(); ++p) {
    const Panel& panel = panels[p];
    const double top = static_cast<double>(p) * panel_height;
    const double x0 = margin_left, y0 = top + margin_top;
    const double w = width - margin_left - margin_right;
    const double h = panel_height - margin_top - margin_bottom;

    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool any = false;
    for (const Series& s : panel.series)
      for (const auto& [x, y] : s.points) {
        if (!std::isfinite(x) || !std::isfinite(y)) continue;
        if (!any) { xmin = xmax = x; ymin = ymax = y; any = true; }
        xmin = std::min(xmin, x); xmax = std::max(xmax, x);
        ymin = std::min(ymin, y); ymax = std::max(ymax, y);
      }
    if (xmax - xmin <= 0) xmax = xmin + 1;
    if (ymax - ymin <= 0) ymax = ymin + 1;

    const auto sx = [&](double x) { return x0 + (x - xmin) / (xmax - xmin) * w; };
    const auto sy = [&](double y) { return y0 + h - (y - ymin) / (ymax - ymin) * h; };

    os << "<g>\n"
       << "<rect x=\"" << detail::fmt(x0) << "\" y=\"" << detail::fmt(y0) << "\" width=\""
       << detail::fmt(w) << "\" height=\"" << detail::fmt(h)
       << "\" fill=\"none\" stroke=\"#444444\"/>\n"
       << "<text x=\"" << detail::fmt(x0) << "\" y=\"" << detail::fmt(top + 18)
       << "\" font-size=\"13\">" << detail::xml_escape(panel.title) << "</text>\n";

    // axis range labels
    os << "<text x=\"" << detail::fmt(x0) << "\" y=\"" << detail::fmt(y0 + h + 16)
       << "\" font-size=\"10\">" << detail::fmt(xmin) << "</text>\n"
       << "<text x=\"" << detail::fmt(x0 + w - 40) << "\" y=\"" << detail::fmt(y0 + h + 16)
       << "\" font-size=\"10\">" << detail::fmt(xmax) << "</text>\n"
       << "<text x=\"" << detail::fmt(x0 + w / 2 - 20) << "\" y=\""
       << detail::fmt(y0 + h + 28) << "\" font-size=\"11\">" << detail::xml_escape(panel.x_label)
       << "</text>\n"
       << "<text x=\"4\" y=\"" << detail::fmt(y0 + 10) << "\" font-size=\"10\">"
       << detail::fmt(ymax) << "</text>\n"
       << "<text x=\"4\" y=\"" << detail::fmt(y0 + h) << "\" font-size=\"10\">"
       << detail::fmt(ymin) << "</text>\n"
       << "<text x=\"4\" y=\"" << detail::fmt(y0 + h / 2) << "\" font-size=\"11\">"
       << detail::xml_escape(panel.y_label) << "</text>\n";

    for (size_t i = 0; i < panel.series.size(); ++i) {
      const Series& s = panel.series[i];
      os << "<polyline fill=\"none\" stroke=\"" << detail::stroke(i)
         << "\" stroke-width=\"1.5\" points=\"";
      bool first = true;
      for (const auto& [x, y] : s.points) {
        if (!std::isfinite(x) || !std::isfinite(y)) continue;
        if (!first) os << ' ';
        os << detail::fmt(sx(x)) << ',' << detail::fmt(sy(y));
        first = false;
      }
      os << "\"/>\n";
      os << "<text x=\"" << detail::fmt(x0 + w - 120) << "\" y=\""
         << detail::fmt(y0 + 14 + 13 * static_cast<double>(i)) << "\" font-size=\"11\" fill=\""
         << detail::stroke(i) << "\">" << detail::xml_escape(s.label) << "</text>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
}

}  // namespace bricard::svg
