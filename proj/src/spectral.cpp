#include "physadder/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <fstream>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <ostream>

#include "physadder/csv.hpp"
#include "physadder/errors.hpp"

namespace physadder {

namespace {

// FFTW's planner is not re-entrant; execution of distinct plans is.
std::mutex& plannerMutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

struct PlanDestroy {
  void operator()(fftw_plan p) const {
    std::lock_guard lock(plannerMutex());
    fftw_destroy_plan(p);
  }
};

using PlanPtr = std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDestroy>;

double windowWeight(Window window, std::size_t n, std::size_t len) {
  if (window == Window::Rectangular) return 1.0;
  return 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(n) /
                              static_cast<double>(len));
}

std::vector<double> prepare(std::span<const double> series, Window window) {
  const double mean =
      std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(series.size());
  std::vector<double> out(series.size());
  for (std::size_t n = 0; n < series.size(); ++n) {
    out[n] = windowWeight(window, n, series.size()) * (series[n] - mean);
  }
  return out;
}

}  // namespace

double Spectrum::energy() const {
  if (magnitudes.empty() || transform_length == 0) return 0.0;
  const std::size_t m = transform_length;
  double e = magnitudes[0] * magnitudes[0];
  for (std::size_t k = 1; k < magnitudes.size(); ++k) {
    const double w = (m % 2 == 0 && k == m / 2) ? 1.0 : 2.0;
    e += w * magnitudes[k] * magnitudes[k];
  }
  return e / static_cast<double>(m);
}

double windowedEnergy(std::span<const double> series, Window window) {
  double e = 0.0;
  for (double v : prepare(series, window)) e += v * v;
  return e;
}

Spectrum periodogram(std::span<const double> series, double dt, PeriodogramOptions opts,
                     std::string time_unit) {
  if (series.size() < kMinSeriesLength) {
    throw InsufficientData("periodogram needs at least " + std::to_string(kMinSeriesLength) +
                           " samples, got " + std::to_string(series.size()));
  }
  if (!(dt > 0.0)) throw InvalidArgument("sample spacing must be positive");
  if (opts.zero_pad_factor < 1) throw InvalidArgument("zero-pad factor must be >= 1");

  const std::size_t n = series.size();
  const std::size_t m = n * static_cast<std::size_t>(opts.zero_pad_factor);
  const std::size_t bins = m / 2 + 1;

  std::unique_ptr<double[], FftwFree> in(static_cast<double*>(fftw_malloc(sizeof(double) * m)));
  std::unique_ptr<fftw_complex[], FftwFree> out(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * bins)));
  PlanPtr plan;
  {
    std::lock_guard lock(plannerMutex());
    plan.reset(fftw_plan_dft_r2c_1d(static_cast<int>(m), in.get(), out.get(), FFTW_ESTIMATE));
  }

  const auto prepared = prepare(series, opts.window);
  std::copy(prepared.begin(), prepared.end(), in.get());
  std::fill(in.get() + n, in.get() + m, 0.0);
  fftw_execute(plan.get());

  Spectrum spec;
  spec.transform_length = m;
  spec.series_length = n;
  spec.bin_width = 1.0 / (static_cast<double>(m) * dt);
  spec.time_unit = std::move(time_unit);
  spec.frequencies.resize(bins);
  spec.magnitudes.resize(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    spec.frequencies[k] = static_cast<double>(k) * spec.bin_width;
    spec.magnitudes[k] = std::hypot(out[k][0], out[k][1]);
  }
  return spec;
}

DominantFrequency dominantFrequency(const Spectrum& spec, double min_frequency) {
  std::size_t qualifying = 0;
  DominantFrequency best;
  bool found = false;
  for (std::size_t k = 0; k < spec.frequencies.size(); ++k) {
    if (spec.frequencies[k] <= 0.0 || spec.frequencies[k] < min_frequency) continue;
    ++qualifying;
    if (!found || spec.magnitudes[k] > best.magnitude) {
      best = {spec.frequencies[k], spec.magnitudes[k], spec.bin_width, k};
      found = true;
    }
  }
  if (qualifying < 2) {
    throw InsufficientData("fewer than two spectral bins above the minimum frequency");
  }
  return best;
}

DominantFrequency dominantFrequency(const Spectrum& spec) {
  const double raw_width =
      spec.series_length == 0
          ? spec.bin_width
          : spec.bin_width * static_cast<double>(spec.transform_length) /
                static_cast<double>(spec.series_length);
  return dominantFrequency(spec, 2.0 * raw_width);
}

void writeSpectrumCsv(std::ostream& os, const Spectrum& spec) {
  os << "frequency,magnitude\n";
  for (std::size_t k = 0; k < spec.frequencies.size(); ++k) {
    os << formatReal(spec.frequencies[k]) << ',' << formatReal(spec.magnitudes[k]) << '\n';
  }
}

void writeSpectrumCsv(const std::filesystem::path& path, const Spectrum& spec) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write " + path.string());
  writeSpectrumCsv(os, spec);
}

}  // namespace physadder
