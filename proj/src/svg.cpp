#include "physadder/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

#include "physadder/errors.hpp"

namespace physadder {

namespace {

constexpr std::array<const char*, 6> kPalette = {"#1f77b4", "#d62728", "#2ca02c",
                                                 "#9467bd", "#ff7f0e", "#17becf"};
constexpr double kMarginLeft = 80;
constexpr double kMarginRight = 20;
constexpr double kMarginTop = 40;
constexpr double kMarginBottom = 50;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
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

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void settle() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    } else if (lo == hi) {
      const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.05;
      lo -= pad;
      hi += pad;
    }
  }
};

}  // namespace

void writeSvgPlot(std::ostream& os, const PlotSpec& spec, const std::vector<PlotSeries>& series) {
  Range xr;
  Range yr;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      xr.add(s.x[i]);
      const double e = i < s.error.size() ? s.error[i] : 0.0;
      yr.add(s.y[i] - e);
      yr.add(s.y[i] + e);
    }
  }
  xr.settle();
  yr.settle();

  const double pw = spec.width - kMarginLeft - kMarginRight;
  const double ph = spec.height - kMarginTop - kMarginBottom;
  auto px = [&](double x) { return kMarginLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return kMarginTop + (1.0 - (y - yr.lo) / (yr.hi - yr.lo)) * ph; };

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<!-- generator: physadder svg 1 -->\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
     << spec.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << num(spec.width / 2.0) << "\" y=\"22\" text-anchor=\"middle\" "
     << "font-size=\"14\">" << escape(spec.title) << "</text>\n"
     << "<rect x=\"" << num(kMarginLeft) << "\" y=\"" << num(kMarginTop) << "\" width=\""
     << num(pw) << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

  const double bottom = kMarginTop + ph;
  os << "<text x=\"" << num(kMarginLeft) << "\" y=\"" << num(bottom + 16)
     << "\" text-anchor=\"start\">" << tick(xr.lo) << "</text>\n"
     << "<text x=\"" << num(kMarginLeft + pw) << "\" y=\"" << num(bottom + 16)
     << "\" text-anchor=\"end\">" << tick(xr.hi) << "</text>\n"
     << "<text x=\"" << num(kMarginLeft - 6) << "\" y=\"" << num(bottom)
     << "\" text-anchor=\"end\">" << tick(yr.lo) << "</text>\n"
     << "<text x=\"" << num(kMarginLeft - 6) << "\" y=\"" << num(kMarginTop + 10)
     << "\" text-anchor=\"end\">" << tick(yr.hi) << "</text>\n"
     << "<text x=\"" << num(kMarginLeft + pw / 2) << "\" y=\"" << num(bottom + 36)
     << "\" text-anchor=\"middle\">" << escape(spec.x_label) << "</text>\n"
     << "<text transform=\"translate(18," << num(kMarginTop + ph / 2)
     << ") rotate(-90)\" text-anchor=\"middle\">" << escape(spec.y_label) << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % kPalette.size()];
    const std::size_t n = std::min(s.x.size(), s.y.size());
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) os << ' ';
      os << num(px(s.x[i])) << ',' << num(py(s.y[i]));
    }
    os << "\"/>\n";
    for (std::size_t i = 0; i < n; ++i) {
      if (i < s.error.size() && s.error[i] > 0.0) {
        os << "<line x1=\"" << num(px(s.x[i])) << "\" x2=\"" << num(px(s.x[i])) << "\" y1=\""
           << num(py(s.y[i] - s.error[i])) << "\" y2=\"" << num(py(s.y[i] + s.error[i]))
           << "\" stroke=\"" << color << "\"/>\n";
      }
      if (s.markers) {
        os << "<circle cx=\"" << num(px(s.x[i])) << "\" cy=\"" << num(py(s.y[i]))
           << "\" r=\"3\" fill=\"" << color << "\"/>\n";
      }
    }
    if (!s.label.empty()) {
      os << "<text x=\"" << num(kMarginLeft + pw - 8) << "\" y=\"" << num(kMarginTop + 16 + 14.0 * k)
         << "\" text-anchor=\"end\" fill=\"" << color << "\">" << escape(s.label) << "</text>\n";
    }
  }
  os << "</svg>\n";
}

void writeSvgPlot(const std::filesystem::path& path, const PlotSpec& spec,
                  const std::vector<PlotSeries>& series) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write " + path.string());
  writeSvgPlot(os, spec, series);
}

}  // namespace physadder
