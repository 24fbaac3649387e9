#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace physadder {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  // Optional symmetric error bars, same length as y when present.
  std::vector<double> error;
  bool markers = false;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 720;
  int height = 420;
};

// Minimal line chart: frame, min/max tick labels, one polyline per series.
void writeSvgPlot(std::ostream& os, const PlotSpec& spec, const std::vector<PlotSeries>& series);
void writeSvgPlot(const std::filesystem::path& path, const PlotSpec& spec,
                  const std::vector<PlotSeries>& series);

}  // namespace physadder
