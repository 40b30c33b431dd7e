#include "circuitlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace circuitlab {

namespace {

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string render_svg_plot(const std::vector<SvgSeries>& series,
                            const SvgPlotOptions& opt) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  auto tx = [&](double x) { return opt.logx ? std::log10(x) : x; };
  auto ty = [&](double y) { return opt.logy ? std::log10(y) : y; };
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (opt.logx && !(s.x[i] > 0)) continue;
      if (opt.logy && !(s.y[i] > 0)) continue;
      xmin = std::min(xmin, tx(s.x[i]));
      xmax = std::max(xmax, tx(s.x[i]));
      const double e = i < s.yerr.size() ? s.yerr[i] : 0.0;
      ymin = std::min(ymin, ty(opt.logy ? s.y[i] : s.y[i] - e));
      ymax = std::max(ymax, ty(opt.logy ? s.y[i] : s.y[i] + e));
    }
  }
  if (!(xmax >= xmin) || !(ymax >= ymin))
    throw std::invalid_argument("render_svg_plot: no drawable data");
  if (xmax == xmin) { xmax += 0.5; xmin -= 0.5; }
  if (ymax == ymin) { ymax += 0.5; ymin -= 0.5; }
  const double padx = 0.04 * (xmax - xmin), pady = 0.06 * (ymax - ymin);
  xmin -= padx; xmax += padx; ymin -= pady; ymax += pady;
  const int ml = 64, mr = 16, mt = 32, mb = 48;
  const int pw = opt.width - ml - mr, ph = opt.height - mt - mb;
  auto px = [&](double x) { return ml + pw * (tx(x) - xmin) / (xmax - xmin); };
  auto py = [&](double y) { return mt + ph * (1.0 - (ty(y) - ymin) / (ymax - ymin)); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width
     << "\" height=\"" << opt.height << "\" viewBox=\"0 0 " << opt.width << " "
     << opt.height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << opt.width / 2 << "\" y=\"18\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"14\">"
     << opt.title << "</text>\n";
  // frame
  os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
     << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"#333\"/>\n";
  // ticks
  const int nticks = 5;
  for (int i = 0; i <= nticks; ++i) {
    const double fx = xmin + (xmax - xmin) * i / nticks;
    const double fy = ymin + (ymax - ymin) * i / nticks;
    const double sx = ml + pw * static_cast<double>(i) / nticks;
    const double sy = mt + ph * (1.0 - static_cast<double>(i) / nticks);
    const double labx = opt.logx ? std::pow(10.0, fx) : fx;
    const double laby = opt.logy ? std::pow(10.0, fy) : fy;
    os << "<line x1=\"" << sx << "\" y1=\"" << mt + ph << "\" x2=\"" << sx
       << "\" y2=\"" << mt + ph + 4 << "\" stroke=\"#333\"/>\n";
    os << "<text x=\"" << sx << "\" y=\"" << mt + ph + 18
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"11\">"
       << num(labx) << "</text>\n";
    os << "<line x1=\"" << ml - 4 << "\" y1=\"" << sy << "\" x2=\"" << ml
       << "\" y2=\"" << sy << "\" stroke=\"#333\"/>\n";
    os << "<text x=\"" << ml - 8 << "\" y=\"" << sy + 4
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
       << num(laby) << "</text>\n";
  }
  os << "<text x=\"" << ml + pw / 2 << "\" y=\"" << opt.height - 8
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
     << opt.xlabel << "</text>\n";
  os << "<text x=\"14\" y=\"" << mt + ph / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        "transform=\"rotate(-90 14 "
     << mt + ph / 2 << ")\">" << opt.ylabel << "</text>\n";
  // series
  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kColors[si % 8];
    std::ostringstream pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (opt.logx && !(s.x[i] > 0)) continue;
      if (opt.logy && !(s.y[i] > 0)) continue;
      pts << px(s.x[i]) << "," << py(s.y[i]) << " ";
      if (i < s.yerr.size() && s.yerr[i] > 0 && !opt.logy) {
        os << "<line x1=\"" << px(s.x[i]) << "\" y1=\"" << py(s.y[i] - s.yerr[i])
           << "\" x2=\"" << px(s.x[i]) << "\" y2=\"" << py(s.y[i] + s.yerr[i])
           << "\" stroke=\"" << color << "\" stroke-width=\"1\"/>\n";
      }
      os << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i])
         << "\" r=\"2.2\" fill=\"" << color << "\"/>\n";
    }
    os << "<polyline points=\"" << pts.str() << "\" fill=\"none\" stroke=\""
       << color << "\" stroke-width=\"1.4\"/>\n";
    if (!s.label.empty()) {
      const int ly = mt + 16 + 16 * static_cast<int>(si);
      os << "<line x1=\"" << ml + pw - 120 << "\" y1=\"" << ly << "\" x2=\""
         << ml + pw - 100 << "\" y2=\"" << ly << "\" stroke=\"" << color
         << "\" stroke-width=\"2\"/>\n";
      os << "<text x=\"" << ml + pw - 94 << "\" y=\"" << ly + 4
         << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label
         << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace circuitlab
