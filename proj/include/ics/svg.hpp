#ifndef ICS_SVG_HPP
#define ICS_SVG_HPP

#include <string>
#include <vector>

namespace ics::io {

/// One plotted series; NaN y-values break the polyline (rendered gaps).
struct SvgSeries {
  std::string label;
  std::vector<double> xs;
  std::vector<double> ys;
  bool draw_line = true;
};

struct SvgPanel {
  std::string title;
  std::vector<SvgSeries> series;
  bool log_y = false;
  std::string x_label;
  std::string y_label;
};

/// Minimal static plot: axes, ticks, polylines and markers, laid out as a
/// grid of panels. Batch-result display only.
void write_svg_panels(const std::string& path,
                      const std::vector<SvgPanel>& panels, int panels_per_row);

}  // namespace ics::io

#endif  // ICS_SVG_HPP
