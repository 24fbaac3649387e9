#include "physadder/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include "physadder/csv.hpp"
#include "physadder/errors.hpp"

namespace physadder {

namespace {

constexpr std::string_view kTraceTag = "# trace";

VoltageTrace parseHeader(const std::string& line, std::size_t lineno) {
  const auto fields = splitCsv(line);
  if (fields.size() != 3) {
    throw ParseError(lineno, "trace header must be '# trace,<length_cm>,<sample_rate_hz>'");
  }
  VoltageTrace t;
  t.length_cm = parseReal(fields[1], lineno);
  t.sample_rate_hz = parseReal(fields[2], lineno);
  t.line = lineno;
  if (!(t.sample_rate_hz > 0.0)) throw ParseError(lineno, "sample rate must be positive");
  return t;
}

}  // namespace

std::vector<VoltageTrace> loadTraces(std::istream& is) {
  std::vector<VoltageTrace> traces;
  std::string raw;
  std::size_t lineno = 0;
  bool any_content = false;
  while (std::getline(is, raw)) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty()) continue;
    any_content = true;
    if (line.rfind(kTraceTag, 0) == 0) {
      traces.push_back(parseHeader(line, lineno));
      continue;
    }
    if (line.front() == '#') throw ParseError(lineno, "unrecognised comment line");
    if (traces.empty()) throw FormatError("line " + std::to_string(lineno) +
                                          ": sample before the first '# trace' header");
    traces.back().samples.push_back(parseReal(line, lineno));
  }
  if (!any_content) throw FormatError("trace file is empty");
  return traces;
}

std::vector<VoltageTrace> loadTraces(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path.string());
  return loadTraces(is);
}

void writeTraces(std::ostream& os, const std::vector<VoltageTrace>& traces) {
  for (const auto& t : traces) {
    os << "# trace," << formatReal(t.length_cm) << ',' << formatReal(t.sample_rate_hz) << '\n';
    for (double v : t.samples) os << formatReal(v) << '\n';
  }
}

LinearFit linearFit(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw InvalidArgument("x and y must have the same length");
  const std::size_t n = xs.size();
  if (n < 2 || std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs.front(); })) {
    throw DegenerateFit("linear fit needs at least two distinct x values");
  }
  double xbar = 0.0;
  double ybar = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    xbar += xs[i];
    ybar += ys[i];
  }
  xbar /= static_cast<double>(n);
  ybar /= static_cast<double>(n);

  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - xbar;
    const double dy = ys[i] - ybar;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }

  LinearFit fit;
  fit.n = n;
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;
  if (syy == 0.0) {
    fit.degenerate = true;
    fit.r2 = 0.0;
    return fit;
  }
  double ssres = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
    ssres += r * r;
  }
  fit.r2 = 1.0 - ssres / syy;
  return fit;
}

LengthStudy lengthFrequencyStudy(const std::vector<VoltageTrace>& traces, PeriodogramOptions opts) {
  LengthStudy study;
  std::map<double, std::vector<double>> by_length;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const auto& t = traces[i];
    try {
      const Spectrum spec = periodogram(t.samples, 1.0 / t.sample_rate_hz, opts, "s");
      const double f = dominantFrequency(spec).frequency;
      study.traces.push_back({t.length_cm, f});
      by_length[t.length_cm].push_back(f);
    } catch (const std::exception& e) {
      study.warnings.push_back("trace " + std::to_string(i + 1) +
                               (t.line ? " (line " + std::to_string(t.line) + ")" : "") +
                               " excluded: " + e.what());
    }
  }
  if (by_length.size() < 2) {
    throw DegenerateFit("frequency-length fit needs at least two distinct lengths, got " +
                        std::to_string(by_length.size()));
  }

  for (const auto& [len, fs] : by_length) {
    LengthSummary s;
    s.length_cm = len;
    s.n = fs.size();
    for (double f : fs) s.mean_freq_hz += f;
    s.mean_freq_hz /= static_cast<double>(s.n);
    if (s.n > 1) {
      double ss = 0.0;
      for (double f : fs) ss += (f - s.mean_freq_hz) * (f - s.mean_freq_hz);
      s.std_freq_hz = std::sqrt(ss / static_cast<double>(s.n - 1));
    }
    study.summary.push_back(s);
  }

  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& tf : study.traces) {
    xs.push_back(tf.length_cm);
    ys.push_back(tf.frequency_hz);
  }
  study.fit = linearFit(xs, ys);
  return study;
}

void writeSummaryCsv(std::ostream& os, const std::vector<LengthSummary>& summary) {
  os << "length_cm,mean_freq_hz,std_freq_hz,n\n";
  for (const auto& s : summary) {
    os << formatReal(s.length_cm) << ',' << formatReal(s.mean_freq_hz) << ','
       << formatReal(s.std_freq_hz) << ',' << s.n << '\n';
  }
}

void writeFitReport(std::ostream& os, const LinearFit& fit) {
  os << "slope,intercept,r2\n"
     << formatReal(fit.slope) << ',' << formatReal(fit.intercept) << ',' << formatReal(fit.r2)
     << '\n';
}

}  // namespace physadder
