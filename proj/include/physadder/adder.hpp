#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace physadder {

struct AdderInput {
  int x = 0;
  int y = 0;
  int carry_in = 0;
};

struct AdderOutput {
  int sum = 0;
  int carry_out = 0;

  int decimal() const { return 2 * carry_out + sum; }
  friend bool operator==(const AdderOutput&, const AdderOutput&) = default;
};

inline constexpr int kBinCount = 4;

// Number of '1' bits among (X, Y, Cin). Throws InvalidArgument on a non-bit.
int encodeBitCount(const AdderInput& in);

// Bin b -> (Cout, S) with 2*Cout + S == b.
AdderOutput decodeBin(int bin);

AdderOutput logicalFullAdd(const AdderInput& in);

/// Bit count -> arena length fraction. Fractions must strictly decrease
/// with bit count so the oscillation frequency (which rises as the arena
/// shrinks) rises with the bin index.
class FractionMap {
 public:
  FractionMap();
  explicit FractionMap(std::array<double, kBinCount> fractions);

  double fraction(int bit_count) const;
  const std::array<double, kBinCount>& fractions() const { return fractions_; }

  // Bin whose fraction equals f (exact match), or -1.
  int binForFraction(double f) const;

 private:
  std::array<double, kBinCount> fractions_;
};

struct CalibrationTable {
  std::array<double, kBinCount> fractions{};
  std::array<double, kBinCount> mean_frequency{};
  std::array<double, kBinCount - 1> thresholds{};
  // Smallest per-bin run count that went into the means.
  int min_runs_per_bin = 0;

  bool lowConfidence() const { return min_runs_per_bin < 2; }
};

struct FrequencySample {
  double fraction = 0.0;
  double frequency = 0.0;
};

// Per-bin mean frequency and midpoint thresholds. Throws CalibrationFailure
// when the means are not strictly ascending, InvalidArgument when a mapped
// fraction has no samples or when require_two_runs is set and a bin has a
// single sample.
CalibrationTable calibrate(const std::vector<FrequencySample>& samples, const FractionMap& map,
                           bool require_two_runs = true);

// Number of thresholds strictly below f.
int classifyFrequency(double f, const CalibrationTable& cal);

void writeCalibrationCsv(std::ostream& os, const CalibrationTable& cal);
void writeCalibrationCsv(const std::filesystem::path& path, const CalibrationTable& cal);
CalibrationTable readCalibrationCsv(std::istream& is);
CalibrationTable readCalibrationCsv(const std::filesystem::path& path);

// Little-endian bit vectors: element 0 is the least significant bit.
using BitWord = std::vector<int>;

BitWord toBits(std::uint64_t value, std::size_t width);
std::uint64_t fromBits(const BitWord& bits);

// Ripple-carry chain of logicalFullAdd. Result has a.size() + 1 bits.
BitWord rippleAdd(const BitWord& a, const BitWord& b);

}  // namespace physadder
