#include "physadder/physical.hpp"

#include <array>
#include <exception>

#include "physadder/errors.hpp"

namespace physadder {

DominantFrequency fluxDominantFrequency(const FluxSeries& series, int warmup_steps) {
  const auto tail = series.afterWarmup(warmup_steps);
  const Spectrum spec = periodogram(tail, static_cast<double>(series.sample_interval));
  return dominantFrequency(spec);
}

std::vector<FrequencySample> sweepFrequencies(const std::vector<SweepRun>& runs, int warmup_steps) {
  std::vector<FrequencySample> out;
  out.reserve(runs.size());
  for (const auto& r : runs) {
    out.push_back({r.fraction, fluxDominantFrequency(r.series, warmup_steps).frequency});
  }
  return out;
}

PhysicalAddResult physicalFullAdd(const AdderInput& in, const CalibrationTable& cal,
                                  const RunConfig& config, std::uint64_t seed, int votes,
                                  const FractionMap& map) {
  if (votes < 1) throw InvalidArgument("vote count must be >= 1");
  PhysicalAddResult res;
  res.fraction = map.fraction(encodeBitCount(in));
  RunConfig cfg = config;
  cfg.geometry.fraction = res.fraction;
  cfg.validate();

  res.seeds.resize(static_cast<std::size_t>(votes));
  res.frequencies.resize(res.seeds.size());
  res.bins.resize(res.seeds.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (int v = 0; v < votes; ++v) {
    try {
      res.seeds[v] = seed + static_cast<std::uint64_t>(v);
      const FluxSeries series = runExperiment(cfg, res.seeds[v]);
      res.frequencies[v] = fluxDominantFrequency(series, cfg.warmup_steps).frequency;
      res.bins[v] = classifyFrequency(res.frequencies[v], cal);
    } catch (...) {
#pragma omp critical(physadder_vote_error)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::array<int, kBinCount> tally{};
  for (int b : res.bins) ++tally[b];
  for (int b = 1; b < kBinCount; ++b) {
    if (tally[b] > tally[res.winning_bin]) res.winning_bin = b;
  }
  res.output = decodeBin(res.winning_bin);
  return res;
}

}  // namespace physadder
