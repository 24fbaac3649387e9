#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "physadder/lattice.hpp"
#include "physadder/particle.hpp"

namespace physadder {

struct RunConfig {
  ArenaGeometry geometry;
  ModelParams params;
  int total_steps = 12000;
  int warmup_steps = 2000;
  // Step count after which the fraction mask replaces the full mask.
  int constraint_step = 0;

  // Throws InvalidGeometry / InvalidArgument / CapacityError.
  void validate() const;
};

struct FluxSeries {
  std::vector<int> steps;
  std::vector<double> values;
  int sample_interval = 5;

  std::size_t size() const { return values.size(); }
  // Samples taken strictly after `warmup` steps.
  std::span<const double> afterWarmup(int warmup) const;
};

// populationSize particles on distinct uniformly random cells of the full
// habitable rect with uniformly random headings. Throws CapacityError.
std::vector<Particle> inoculate(const ArenaGeometry& geometry, const ModelParams& params, Rng& rng);

// Freezes every particle whose cell lies outside the mask. Returns the
// number newly frozen.
int applyConstraint(std::vector<Particle>& pop, const HabitableMask& mask);

/// Full state of one run; steppable for tests and snapshots.
class Simulation {
 public:
  Simulation(const RunConfig& config, std::uint64_t seed);

  // Advances one scheduler step and samples flux when due.
  void step();
  FluxSeries run();

  int stepIndex() const { return step_; }
  const RunConfig& config() const { return config_; }
  const std::vector<Particle>& particles() const { return pop_; }
  const TrailField& field() const { return field_; }
  const OccupancyGrid& occupancy() const { return occ_; }
  const HabitableMask& mask() const { return constrained_ ? constrained_mask_ : full_mask_; }
  const FluxSeries& series() const { return series_; }

 private:
  void constrain();

  RunConfig config_;
  Rng rng_;
  HabitableMask full_mask_;
  HabitableMask constrained_mask_;
  bool constrained_ = false;
  TrailField field_;
  OccupancyGrid occ_;
  std::vector<Particle> pop_;
  StepWorkspace ws_;
  FluxSeries series_;
  int step_ = 0;
};

FluxSeries runExperiment(const RunConfig& config, std::uint64_t seed);

struct SweepRun {
  double fraction = 0.0;
  std::uint64_t seed = 0;
  FluxSeries series;
};

// Runs every fraction with seeds base_seed + i, i in [0, runs_per_fraction).
// Results are ordered by fraction, then run index. Runs execute in parallel
// with OpenMP.
std::vector<SweepRun> sweep(const std::vector<double>& fractions, int runs_per_fraction,
                            const RunConfig& base, std::uint64_t base_seed);

// Sequential reference for sweep(); identical output.
std::vector<SweepRun> sweepSerial(const std::vector<double>& fractions, int runs_per_fraction,
                                  const RunConfig& base, std::uint64_t base_seed);

void writeFluxCsv(std::ostream& os, const FluxSeries& series);
void writeFluxCsv(const std::filesystem::path& path, const FluxSeries& series);

}  // namespace physadder
