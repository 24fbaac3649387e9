#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "physadder/spectral.hpp"

namespace physadder {

struct VoltageTrace {
  double length_cm = 0.0;
  double sample_rate_hz = 0.0;
  std::vector<double> samples;
  // 1-based line of the trace header in the source file (0 if synthetic).
  std::size_t line = 0;
};

// Trace blocks: a "# trace,<length_cm>,<sample_rate_hz>" header followed by
// one sample per line. Blank lines are ignored. Throws FormatError for an
// empty file or samples before the first header, ParseError otherwise.
std::vector<VoltageTrace> loadTraces(std::istream& is);
std::vector<VoltageTrace> loadTraces(const std::filesystem::path& path);

void writeTraces(std::ostream& os, const std::vector<VoltageTrace>& traces);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  // Set when every y is equal; r2 is then reported as 0.
  bool degenerate = false;
  std::size_t n = 0;
};

// Ordinary least squares y = slope * x + intercept. Throws DegenerateFit
// when fewer than two distinct x values are given.
LinearFit linearFit(const std::vector<double>& xs, const std::vector<double>& ys);

struct LengthSummary {
  double length_cm = 0.0;
  double mean_freq_hz = 0.0;
  double std_freq_hz = 0.0;  // sample standard deviation, 0 when n == 1
  std::size_t n = 0;
};

struct TraceFrequency {
  double length_cm = 0.0;
  double frequency_hz = 0.0;
};

struct LengthStudy {
  LinearFit fit;
  std::vector<LengthSummary> summary;  // ascending length
  std::vector<TraceFrequency> traces;  // surviving traces, input order
  std::vector<std::string> warnings;   // one per excluded trace
};

// Dominant frequency per trace, then a fit of frequency against length over
// every surviving trace. Traces that fail spectral analysis are excluded
// with a warning. Throws DegenerateFit when fewer than two distinct lengths
// survive.
LengthStudy lengthFrequencyStudy(const std::vector<VoltageTrace>& traces,
                                 PeriodogramOptions opts = {});

void writeSummaryCsv(std::ostream& os, const std::vector<LengthSummary>& summary);
void writeFitReport(std::ostream& os, const LinearFit& fit);

}  // namespace physadder
