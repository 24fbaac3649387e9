#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace physadder {

enum class Window { Hann, Rectangular };

struct PeriodogramOptions {
  Window window = Window::Hann;
  // 1 = no padding; 4 = zero-pad to 4N for an interpolated spectrum.
  int zero_pad_factor = 1;
};

inline constexpr std::size_t kMinSeriesLength = 16;

/// One-sided magnitude spectrum of a real series.
///
/// magnitudes[k] = |sum_n w[n] (x[n] - mean) exp(-2 pi i k n / M)| for
/// k = 0..M/2, where M = N * zero_pad_factor and w is the periodic Hann
/// window 0.5 - 0.5 cos(2 pi n / N) (or 1 for Rectangular). No further
/// scaling is applied, so with no padding energy() equals the windowed
/// time-domain energy sum_n (w[n] (x[n] - mean))^2 exactly up to rounding.
struct Spectrum {
  std::vector<double> frequencies;
  std::vector<double> magnitudes;
  double bin_width = 0.0;
  // Number of transform points M (after padding).
  std::size_t transform_length = 0;
  // Number of input samples N.
  std::size_t series_length = 0;
  std::string time_unit = "step";

  // Parseval-normalised one-sided energy: (|X_0|^2 + 2 sum_{0<k<M/2} |X_k|^2
  // + |X_{M/2}|^2 [M even]) / M.
  double energy() const;
};

struct DominantFrequency {
  double frequency = 0.0;
  double magnitude = 0.0;
  double bin_width = 0.0;
  std::size_t bin = 0;
};

// dt is the time between samples, in time_unit. Throws InsufficientData
// when the series has fewer than kMinSeriesLength samples.
Spectrum periodogram(std::span<const double> series, double dt, PeriodogramOptions opts = {},
                     std::string time_unit = "step");

// Windowed, mean-removed time-domain energy; the Parseval counterpart of
// Spectrum::energy().
double windowedEnergy(std::span<const double> series, Window window);

// Argmax-magnitude bin with frequency >= min_frequency; ties resolve to the
// lower frequency. Throws InsufficientData when fewer than two bins qualify.
DominantFrequency dominantFrequency(const Spectrum& spec, double min_frequency);

// Default DC exclusion: two bin widths of the unpadded transform.
DominantFrequency dominantFrequency(const Spectrum& spec);

void writeSpectrumCsv(std::ostream& os, const Spectrum& spec);
void writeSpectrumCsv(const std::filesystem::path& path, const Spectrum& spec);

}  // namespace physadder
