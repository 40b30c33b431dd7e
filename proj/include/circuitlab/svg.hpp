#pragma once

#include <string>
#include <vector>

namespace circuitlab {

struct SvgSeries {
  std::vector<double> x, y, yerr;
  std::string label;
};

struct SvgPlotOptions {
  std::string title, xlabel, ylabel;
  bool logx = false, logy = false;
  int width = 720, height = 480;
};

/// Static SVG line plot with error bars; no external dependencies.
std::string render_svg_plot(const std::vector<SvgSeries>& series,
                            const SvgPlotOptions& opt);

}  // namespace circuitlab
