#include "physadder/simulation.hpp"

#include <algorithm>
#include <fstream>
#include <exception>
#include <ostream>
#include <string>

#include "physadder/csv.hpp"
#include "physadder/errors.hpp"

namespace physadder {

void RunConfig::validate() const {
  geometry.validate();
  params.validate();
  if (total_steps < 1) throw InvalidArgument("total steps must be >= 1");
  if (warmup_steps < 0 || warmup_steps >= total_steps) {
    throw InvalidArgument("warmup steps must lie in [0, total steps)");
  }
  if (constraint_step < 0 || constraint_step > total_steps) {
    throw InvalidArgument("constraint step must lie in [0, total steps]");
  }
  if (!geometry.constrainedRect().containsRect(geometry.samplingWindow())) {
    throw InvalidGeometry("sampling window does not fit inside the constrained arena at fraction " +
                          formatReal(geometry.fraction));
  }
  if (params.population > geometry.habitable.area()) {
    throw CapacityError("population " + std::to_string(params.population) + " exceeds " +
                        std::to_string(geometry.habitable.area()) + " habitable cells");
  }
}

std::span<const double> FluxSeries::afterWarmup(int warmup) const {
  const auto first = std::upper_bound(steps.begin(), steps.end(), warmup) - steps.begin();
  return std::span<const double>(values).subspan(static_cast<std::size_t>(first));
}

std::vector<Particle> inoculate(const ArenaGeometry& geometry, const ModelParams& params, Rng& rng) {
  const Rect& r = geometry.habitable;
  const long cells = r.area();
  if (params.population < 0) throw InvalidArgument("population must be non-negative");
  if (params.population > cells) {
    throw CapacityError("population " + std::to_string(params.population) + " exceeds " +
                        std::to_string(cells) + " habitable cells");
  }
  // Partial Fisher-Yates over cell indices gives distinct uniform cells.
  std::vector<long> idx(static_cast<std::size_t>(cells));
  for (long i = 0; i < cells; ++i) idx[i] = i;
  std::vector<Particle> pop(static_cast<std::size_t>(params.population));
  std::uniform_real_distribution<double> heading(0.0, 360.0);
  for (int i = 0; i < params.population; ++i) {
    std::uniform_int_distribution<long> pick(i, cells - 1);
    std::swap(idx[i], idx[pick(rng)]);
    const long c = idx[i];
    pop[i].x = r.x + static_cast<double>(c % r.width) + 0.5;
    pop[i].y = r.y + static_cast<double>(c / r.width) + 0.5;
    pop[i].heading = normalizeHeading(heading(rng));
  }
  return pop;
}

int applyConstraint(std::vector<Particle>& pop, const HabitableMask& mask) {
  int n = 0;
  for (auto& p : pop) {
    if (!p.frozen && !mask.contains(p.cellX(), p.cellY())) {
      p.frozen = true;
      ++n;
    }
  }
  return n;
}

namespace {

const RunConfig& validated(const RunConfig& config) {
  config.validate();
  return config;
}

}  // namespace

Simulation::Simulation(const RunConfig& config, std::uint64_t seed)
    : config_(validated(config)),
      rng_(seed),
      full_mask_(config.geometry.lattice_width, config.geometry.lattice_height,
                 config.geometry.habitable),
      constrained_mask_(buildMask(config.geometry)),
      field_(config.geometry.lattice_width, config.geometry.lattice_height),
      occ_(config.geometry.lattice_width, config.geometry.lattice_height) {
  pop_ = inoculate(config_.geometry, config_.params, rng_);
  for (std::size_t i = 0; i < pop_.size(); ++i) {
    occ_.place(pop_[i].cellX(), pop_[i].cellY(), static_cast<std::int32_t>(i));
  }
  series_.sample_interval = config_.params.sample_interval;
  if (config_.constraint_step == 0) constrain();
}

void Simulation::constrain() {
  applyConstraint(pop_, constrained_mask_);
  constrained_ = true;
}

void Simulation::step() {
  populationStep(pop_, occ_, mask(), field_, config_.params, rng_, ws_);
  ++step_;
  if (step_ % config_.params.sample_interval == 0) {
    series_.steps.push_back(step_);
    series_.values.push_back(meanInWindow(field_, config_.geometry.samplingWindow()));
  }
  if (!constrained_ && step_ == config_.constraint_step) constrain();
}

FluxSeries Simulation::run() {
  while (step_ < config_.total_steps) step();
  return series_;
}

FluxSeries runExperiment(const RunConfig& config, std::uint64_t seed) {
  Simulation sim(config, seed);
  return sim.run();
}

namespace {

std::vector<SweepRun> plan(const std::vector<double>& fractions, int runs_per_fraction,
                           const RunConfig& base, std::uint64_t base_seed) {
  if (runs_per_fraction < 1) throw InvalidArgument("runs per fraction must be >= 1");
  std::vector<SweepRun> runs;
  for (double f : fractions) {
    RunConfig cfg = base;
    cfg.geometry.fraction = f;
    cfg.validate();
    for (int i = 0; i < runs_per_fraction; ++i) {
      runs.push_back({f, base_seed + static_cast<std::uint64_t>(i), {}});
    }
  }
  return runs;
}

FluxSeries runOne(const RunConfig& base, const SweepRun& r) {
  RunConfig cfg = base;
  cfg.geometry.fraction = r.fraction;
  return runExperiment(cfg, r.seed);
}

}  // namespace

std::vector<SweepRun> sweep(const std::vector<double>& fractions, int runs_per_fraction,
                            const RunConfig& base, std::uint64_t base_seed) {
  auto runs = plan(fractions, runs_per_fraction, base, base_seed);
  const long n = static_cast<long>(runs.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    try {
      runs[i].series = runOne(base, runs[i]);
    } catch (...) {
#pragma omp critical(physadder_sweep_error)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return runs;
}

std::vector<SweepRun> sweepSerial(const std::vector<double>& fractions, int runs_per_fraction,
                                  const RunConfig& base, std::uint64_t base_seed) {
  auto runs = plan(fractions, runs_per_fraction, base, base_seed);
  for (auto& r : runs) r.series = runOne(base, r);
  return runs;
}

void writeFluxCsv(std::ostream& os, const FluxSeries& series) {
  os << "step,mean_flux\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    os << series.steps[i] << ',' << formatReal(series.values[i]) << '\n';
  }
}

void writeFluxCsv(const std::filesystem::path& path, const FluxSeries& series) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write " + path.string());
  writeFluxCsv(os, series);
}

}  // namespace physadder
