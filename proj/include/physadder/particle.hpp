#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "physadder/lattice.hpp"

namespace physadder {

using Rng = std::mt19937_64;

struct ModelParams {
  double sensor_angle = 90.0;    // degrees
  double rotation_angle = 22.5;  // degrees
  double sensor_offset = 15.0;   // pixels
  double deposit = 5.0;
  double damp = 0.99;
  int sample_interval = 5;  // steps between flux samples
  int population = 5000;

  // Throws InvalidArgument.
  void validate() const;
};

/// A mobile agent on the lattice. Position is continuous; the occupied
/// cell is (floor(x), floor(y)). Heading is in degrees, [0, 360).
struct Particle {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
  bool frozen = false;

  // cos/sin of `heading`, valid while trig_heading == heading.
  mutable double cos_h = 1.0;
  mutable double sin_h = 0.0;
  mutable double trig_heading = -1.0;

  int cellX() const { return static_cast<int>(std::floor(x)); }
  int cellY() const { return static_cast<int>(std::floor(y)); }
};

// Wraps any angle in degrees into [0, 360).
double normalizeHeading(double degrees);

// Sensory stage. Reads the field at SO pixels along heading - SA, heading
// and heading + SA (cell containing the sensor point, 0 off-lattice) and
// returns the new heading. Exactly one RNG draw is consumed when both side
// sensors exceed the front sensor; none otherwise.
double sense(const Particle& p, const TrailField& field, const ModelParams& params, Rng& rng);

// Rule table on raw sensor values; `coin` picks the sign in the random
// case (true: +RA).
double turnFromReadings(double heading, double fl, double f, double fr, double rotation_angle,
                        bool coin);

// Motor stage. Moves one pixel along the heading if the target cell is the
// current cell, or is inside the mask and unoccupied; deposits on success.
// A blocked particle keeps its position and heading and deposits nothing.
bool attemptMove(Particle& p, std::int32_t id, OccupancyGrid& occ, const HabitableMask& mask,
                 TrailField& field, const ModelParams& params);

// Reusable per-run buffers for populationStep.
struct StepWorkspace {
  std::vector<std::int32_t> order;
  TrailField scratch{1, 1};
};

// Sense phase over live particles in a fresh random order, move phase in
// another fresh random order, then one diffusion pass.
void populationStep(std::vector<Particle>& pop, OccupancyGrid& occ, const HabitableMask& mask,
                    TrailField& field, const ModelParams& params, Rng& rng, StepWorkspace& ws);

}  // namespace physadder
