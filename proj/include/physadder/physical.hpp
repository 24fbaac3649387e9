#pragma once

#include <cstdint>
#include <vector>

#include "physadder/adder.hpp"
#include "physadder/simulation.hpp"
#include "physadder/spectral.hpp"

namespace physadder {

// Dominant frequency (cycles per step) of the post-warmup flux samples.
DominantFrequency fluxDominantFrequency(const FluxSeries& series, int warmup_steps);

// One FrequencySample per sweep run.
std::vector<FrequencySample> sweepFrequencies(const std::vector<SweepRun>& runs, int warmup_steps);

struct PhysicalAddResult {
  AdderOutput output;
  double fraction = 0.0;
  std::vector<std::uint64_t> seeds;
  std::vector<double> frequencies;
  std::vector<int> bins;
  int winning_bin = 0;
};

/// Encodes the input as an arena fraction, runs `votes` simulations with
/// seeds seed, seed+1, ..., classifies each dominant frequency and decodes
/// the most common bin. Equal vote counts resolve to the lower bin.
PhysicalAddResult physicalFullAdd(const AdderInput& in, const CalibrationTable& cal,
                                  const RunConfig& config, std::uint64_t seed, int votes = 1,
                                  const FractionMap& map = {});

}  // namespace physadder
