#include "ics/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "ics/errors.hpp"

namespace ics::io {

namespace {

constexpr int kPanelW = 420;
constexpr int kPanelH = 300;
constexpr int kMarginL = 58;
constexpr int kMarginR = 16;
constexpr int kMarginT = 34;
constexpr int kMarginB = 42;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  bool valid() const { return lo <= hi; }
  void pad() {
    if (!valid()) {
      lo = 0.0;
      hi = 1.0;
    } else if (lo == hi) {
      lo -= 0.5;
      hi += 0.5;
    } else {
      const double m = 0.05 * (hi - lo);
      lo -= m;
      hi += m;
    }
  }
};

std::string fmt_tick(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

}  // namespace

void write_svg_panels(const std::string& path,
                      const std::vector<SvgPanel>& panels,
                      int panels_per_row) {
  if (panels_per_row < 1) panels_per_row = 1;
  const int ncols = std::min<int>(panels_per_row,
                                  std::max<int>(1, (int)panels.size()));
  const int nrows =
      panels.empty() ? 1 : ((int)panels.size() + ncols - 1) / ncols;
  const int width = ncols * kPanelW;
  const int height = nrows * kPanelH;

  std::ofstream out(path);
  if (!out) throw ShapeError("cannot write SVG file: " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (std::size_t pi = 0; pi < panels.size(); ++pi) {
    const SvgPanel& panel = panels[pi];
    const int ox = (int)(pi % (std::size_t)ncols) * kPanelW;
    const int oy = (int)(pi / (std::size_t)ncols) * kPanelH;
    const int x0 = ox + kMarginL;
    const int y0 = oy + kMarginT;
    const int pw = kPanelW - kMarginL - kMarginR;
    const int ph = kPanelH - kMarginT - kMarginB;

    auto yval = [&panel](double y) {
      if (!panel.log_y) return y;
      return (y > 0.0 && std::isfinite(y)) ? std::log10(y)
                                           : std::numeric_limits<double>::quiet_NaN();
    };

    Range rx, ry;
    for (const SvgSeries& s : panel.series) {
      for (std::size_t i = 0; i < s.xs.size() && i < s.ys.size(); ++i) {
        const double yv = yval(s.ys[i]);
        if (std::isfinite(s.xs[i]) && std::isfinite(yv)) {
          rx.add(s.xs[i]);
          ry.add(yv);
        }
      }
    }
    rx.pad();
    ry.pad();

    auto px = [&](double x) {
      return x0 + (x - rx.lo) / (rx.hi - rx.lo) * pw;
    };
    auto py = [&](double y) {
      return y0 + ph - (y - ry.lo) / (ry.hi - ry.lo) * ph;
    };

    out << "<text x=\"" << ox + kPanelW / 2 << "\" y=\"" << oy + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\">"
        << panel.title << "</text>\n";
    out << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << pw
        << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";

    const int nticks = 5;
    for (int t = 0; t <= nticks; ++t) {
      const double fx = rx.lo + (rx.hi - rx.lo) * t / nticks;
      const double fy = ry.lo + (ry.hi - ry.lo) * t / nticks;
      out << "<line x1=\"" << px(fx) << "\" y1=\"" << y0 + ph << "\" x2=\""
          << px(fx) << "\" y2=\"" << y0 + ph + 4
          << "\" stroke=\"#333\"/>\n";
      out << "<text x=\"" << px(fx) << "\" y=\"" << y0 + ph + 16
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
             "font-size=\"10\">"
          << fmt_tick(fx) << "</text>\n";
      out << "<line x1=\"" << x0 - 4 << "\" y1=\"" << py(fy) << "\" x2=\""
          << x0 << "\" y2=\"" << py(fy) << "\" stroke=\"#333\"/>\n";
      out << "<text x=\"" << x0 - 7 << "\" y=\"" << py(fy) + 3
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
             "font-size=\"10\">"
          << (panel.log_y ? ("1e" + fmt_tick(fy)) : fmt_tick(fy))
          << "</text>\n";
    }
    if (!panel.x_label.empty()) {
      out << "<text x=\"" << x0 + pw / 2 << "\" y=\"" << y0 + ph + 32
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
             "font-size=\"11\">"
          << panel.x_label << "</text>\n";
    }
    if (!panel.y_label.empty()) {
      out << "<text x=\"" << ox + 14 << "\" y=\"" << y0 + ph / 2
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
             "font-size=\"11\" transform=\"rotate(-90 " << ox + 14 << " "
          << y0 + ph / 2 << ")\">" << panel.y_label << "</text>\n";
    }

    for (std::size_t si = 0; si < panel.series.size(); ++si) {
      const SvgSeries& s = panel.series[si];
      const char* color = kPalette[si % kPaletteSize];
      if (s.draw_line) {
        bool open = false;
        std::ostringstream pts;
        auto flush = [&]() {
          if (open) {
            out << "<polyline points=\"" << pts.str()
                << "\" fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.5\"/>\n";
            pts.str("");
            open = false;
          }
        };
        for (std::size_t i = 0; i < s.xs.size() && i < s.ys.size(); ++i) {
          const double yv = yval(s.ys[i]);
          if (!std::isfinite(s.xs[i]) || !std::isfinite(yv)) {
            flush();  // gap for failed cells
            continue;
          }
          pts << px(s.xs[i]) << "," << py(yv) << " ";
          open = true;
        }
        flush();
      }
      for (std::size_t i = 0; i < s.xs.size() && i < s.ys.size(); ++i) {
        const double yv = yval(s.ys[i]);
        if (!std::isfinite(s.xs[i]) || !std::isfinite(yv)) continue;
        out << "<circle cx=\"" << px(s.xs[i]) << "\" cy=\"" << py(yv)
            << "\" r=\"2.2\" fill=\"" << color << "\"/>\n";
      }
      if (!s.label.empty()) {
        out << "<text x=\"" << x0 + 8 << "\" y=\"" << y0 + 14 + 13 * (int)si
            << "\" font-family=\"sans-serif\" font-size=\"10\" fill=\""
            << color << "\">" << s.label << "</text>\n";
      }
    }
  }
  out << "</svg>\n";
}

}  // namespace ics::io
