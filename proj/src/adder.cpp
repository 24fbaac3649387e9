#include "physadder/adder.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "physadder/csv.hpp"
#include "physadder/errors.hpp"

namespace physadder {

namespace {

void requireBit(int v, const char* name) {
  if (v != 0 && v != 1) {
    throw InvalidArgument(std::string(name) + " must be 0 or 1, got " + std::to_string(v));
  }
}

}  // namespace

int encodeBitCount(const AdderInput& in) {
  requireBit(in.x, "X");
  requireBit(in.y, "Y");
  requireBit(in.carry_in, "Cin");
  return in.x + in.y + in.carry_in;
}

AdderOutput decodeBin(int bin) {
  if (bin < 0 || bin >= kBinCount) {
    throw InvalidArgument("output bin must be in 0..3, got " + std::to_string(bin));
  }
  return AdderOutput{bin & 1, bin >> 1};
}

AdderOutput logicalFullAdd(const AdderInput& in) { return decodeBin(encodeBitCount(in)); }

FractionMap::FractionMap() : FractionMap({1.0, 0.75, 0.5, 0.25}) {}

FractionMap::FractionMap(std::array<double, kBinCount> fractions) : fractions_(fractions) {
  for (int b = 0; b < kBinCount; ++b) {
    if (!(fractions_[b] > 0.0 && fractions_[b] <= 1.0)) {
      throw InvalidArgument("fraction map entries must lie in (0, 1]");
    }
    if (b > 0 && !(fractions_[b] < fractions_[b - 1])) {
      throw InvalidArgument("fraction map must strictly decrease with bit count");
    }
  }
}

double FractionMap::fraction(int bit_count) const {
  if (bit_count < 0 || bit_count >= kBinCount) {
    throw InvalidArgument("bit count must be in 0..3");
  }
  return fractions_[bit_count];
}

int FractionMap::binForFraction(double f) const {
  for (int b = 0; b < kBinCount; ++b) {
    if (fractions_[b] == f) return b;
  }
  return -1;
}

CalibrationTable calibrate(const std::vector<FrequencySample>& samples, const FractionMap& map,
                           bool require_two_runs) {
  std::array<double, kBinCount> sum{};
  std::array<int, kBinCount> count{};
  for (const auto& s : samples) {
    const int bin = map.binForFraction(s.fraction);
    if (bin < 0) continue;
    sum[bin] += s.frequency;
    ++count[bin];
  }

  CalibrationTable cal;
  cal.fractions = map.fractions();
  cal.min_runs_per_bin = *std::min_element(count.begin(), count.end());
  for (int b = 0; b < kBinCount; ++b) {
    if (count[b] == 0) {
      throw InvalidArgument("no calibration runs at fraction " + std::to_string(cal.fractions[b]));
    }
    if (require_two_runs && count[b] < 2) {
      throw InvalidArgument("calibration needs at least 2 runs per fraction");
    }
    cal.mean_frequency[b] = sum[b] / count[b];
  }

  for (int b = 1; b < kBinCount; ++b) {
    if (!(cal.mean_frequency[b] > cal.mean_frequency[b - 1])) {
      std::ostringstream msg;
      msg << "mean frequencies are not strictly ascending by bin:";
      for (int k = 0; k < kBinCount; ++k) {
        msg << " bin" << k << "(fraction " << cal.fractions[k] << ")=" << cal.mean_frequency[k];
      }
      throw CalibrationFailure(msg.str());
    }
  }
  for (int t = 0; t + 1 < kBinCount; ++t) {
    cal.thresholds[t] = 0.5 * (cal.mean_frequency[t] + cal.mean_frequency[t + 1]);
  }
  return cal;
}

int classifyFrequency(double f, const CalibrationTable& cal) {
  int bin = 0;
  for (double t : cal.thresholds) {
    if (t < f) ++bin;
  }
  return bin;
}

void writeCalibrationCsv(std::ostream& os, const CalibrationTable& cal) {
  os << "bin,fraction,mean_frequency\n";
  for (int b = 0; b < kBinCount; ++b) {
    os << b << ',' << formatReal(cal.fractions[b]) << ',' << formatReal(cal.mean_frequency[b])
       << '\n';
  }
  os << "threshold_index,frequency\n";
  for (int t = 0; t + 1 < kBinCount; ++t) {
    os << t << ',' << formatReal(cal.thresholds[t]) << '\n';
  }
}

void writeCalibrationCsv(const std::filesystem::path& path, const CalibrationTable& cal) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write " + path.string());
  writeCalibrationCsv(os, cal);
}

CalibrationTable readCalibrationCsv(std::istream& is) {
  CalibrationTable cal;
  std::string line;
  std::size_t lineno = 0;
  enum class Section { None, Bins, Thresholds } section = Section::None;
  std::array<bool, kBinCount> seen_bin{};
  std::array<bool, kBinCount - 1> seen_thr{};

  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    if (line == "bin,fraction,mean_frequency") {
      section = Section::Bins;
      continue;
    }
    if (line == "threshold_index,frequency") {
      section = Section::Thresholds;
      continue;
    }
    const auto fields = splitCsv(line);
    if (section == Section::Bins) {
      if (fields.size() != 3) throw ParseError(lineno, "expected bin,fraction,mean_frequency");
      const int b = static_cast<int>(parseReal(fields[0], lineno));
      if (b < 0 || b >= kBinCount) throw ParseError(lineno, "bin index out of range");
      cal.fractions[b] = parseReal(fields[1], lineno);
      cal.mean_frequency[b] = parseReal(fields[2], lineno);
      seen_bin[b] = true;
    } else if (section == Section::Thresholds) {
      if (fields.size() != 2) throw ParseError(lineno, "expected threshold_index,frequency");
      const int t = static_cast<int>(parseReal(fields[0], lineno));
      if (t < 0 || t >= kBinCount - 1) throw ParseError(lineno, "threshold index out of range");
      cal.thresholds[t] = parseReal(fields[1], lineno);
      seen_thr[t] = true;
    } else {
      throw FormatError("calibration file: data before header at line " + std::to_string(lineno));
    }
  }
  if (lineno == 0) throw FormatError("calibration file is empty");
  for (bool s : seen_bin) {
    if (!s) throw FormatError("calibration file is missing a bin row");
  }
  for (bool s : seen_thr) {
    if (!s) throw FormatError("calibration file is missing a threshold row");
  }
  for (int t = 1; t + 1 < kBinCount; ++t) {
    if (!(cal.thresholds[t] > cal.thresholds[t - 1])) {
      throw FormatError("calibration thresholds are not strictly ascending");
    }
  }
  cal.min_runs_per_bin = 2;
  return cal;
}

CalibrationTable readCalibrationCsv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path.string());
  return readCalibrationCsv(is);
}

BitWord toBits(std::uint64_t value, std::size_t width) {
  BitWord bits(width);
  for (std::size_t i = 0; i < width; ++i) bits[i] = static_cast<int>((value >> i) & 1u);
  return bits;
}

std::uint64_t fromBits(const BitWord& bits) {
  std::uint64_t v = 0;
  for (std::size_t i = bits.size(); i-- > 0;) v = (v << 1) | static_cast<std::uint64_t>(bits[i]);
  return v;
}

BitWord rippleAdd(const BitWord& a, const BitWord& b) {
  if (a.empty() || a.size() != b.size()) {
    throw InvalidArgument("rippleAdd needs two words of equal width >= 1");
  }
  BitWord out(a.size() + 1);
  int carry = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const AdderOutput r = logicalFullAdd({a[i], b[i], carry});
    out[i] = r.sum;
    carry = r.carry_out;
  }
  out[a.size()] = carry;
  return out;
}

}  // namespace physadder
