#include "physadder/particle.hpp"

#include <algorithm>
#include <numbers>

#include "physadder/errors.hpp"

namespace physadder {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

double sample(const TrailField& field, double x, double y) {
  return field.read(static_cast<int>(std::floor(x)), static_cast<int>(std::floor(y)));
}

void direction(const Particle& p, double& c, double& s) {
  if (p.trig_heading != p.heading) {
    const double h = p.heading * kDegToRad;
    p.cos_h = std::cos(h);
    p.sin_h = std::sin(h);
    p.trig_heading = p.heading;
  }
  c = p.cos_h;
  s = p.sin_h;
}

}  // namespace

void ModelParams::validate() const {
  if (!(sensor_offset >= 1.0)) throw InvalidArgument("sensor offset must be >= 1");
  if (!(damp > 0.0 && damp < 1.0)) throw InvalidArgument("damp factor must lie in (0, 1)");
  if (!(deposit >= 0.0)) throw InvalidArgument("deposit amount must be non-negative");
  if (sample_interval < 1) throw InvalidArgument("sample interval must be >= 1");
  if (population < 0) throw InvalidArgument("population must be non-negative");
  if (!std::isfinite(sensor_angle) || !std::isfinite(rotation_angle)) {
    throw InvalidArgument("sensor and rotation angles must be finite");
  }
}

double normalizeHeading(double degrees) {
  double h = std::fmod(degrees, 360.0);
  if (h < 0.0) h += 360.0;
  if (h >= 360.0) h = 0.0;  // fmod of a tiny negative can round up to 360
  return h;
}

double turnFromReadings(double heading, double fl, double f, double fr, double rotation_angle,
                        bool coin) {
  if (f > fl && f > fr) return heading;
  if (f < fl && f < fr) return normalizeHeading(heading + (coin ? rotation_angle : -rotation_angle));
  if (fl < fr) return normalizeHeading(heading + rotation_angle);
  if (fr < fl) return normalizeHeading(heading - rotation_angle);
  return heading;
}

namespace {

double senseWith(const Particle& p, const TrailField& field, const ModelParams& params, double ca,
                 double sn, Rng& rng) {
  double c = 0.0;
  double s = 0.0;
  direction(p, c, s);
  const double so = params.sensor_offset;
  // Side sensor directions are the heading vector rotated by -SA and +SA.
  const double f = sample(field, p.x + so * c, p.y + so * s);
  const double fl = sample(field, p.x + so * (c * ca + s * sn), p.y + so * (s * ca - c * sn));
  const double fr = sample(field, p.x + so * (c * ca - s * sn), p.y + so * (s * ca + c * sn));
  const bool random_case = f < fl && f < fr;
  const bool coin = random_case && (rng() >> 63) != 0;
  return turnFromReadings(p.heading, fl, f, fr, params.rotation_angle, coin);
}

}  // namespace

double sense(const Particle& p, const TrailField& field, const ModelParams& params, Rng& rng) {
  const double sa = params.sensor_angle * kDegToRad;
  return senseWith(p, field, params, std::cos(sa), std::sin(sa), rng);
}

bool attemptMove(Particle& p, std::int32_t id, OccupancyGrid& occ, const HabitableMask& mask,
                 TrailField& field, const ModelParams& params) {
  double c = 0.0;
  double s = 0.0;
  direction(p, c, s);
  const double nx = p.x + c;
  const double ny = p.y + s;
  const int cx = p.cellX();
  const int cy = p.cellY();
  const int tx = static_cast<int>(std::floor(nx));
  const int ty = static_cast<int>(std::floor(ny));
  if (tx != cx || ty != cy) {
    if (!mask.contains(tx, ty) || occ.occupied(tx, ty)) return false;
    occ.clear(cx, cy);
    occ.place(tx, ty, id);
  }
  p.x = nx;
  p.y = ny;
  field.at(tx, ty) += params.deposit;
  return true;
}

void populationStep(std::vector<Particle>& pop, OccupancyGrid& occ, const HabitableMask& mask,
                    TrailField& field, const ModelParams& params, Rng& rng, StepWorkspace& ws) {
  ws.order.clear();
  for (std::size_t i = 0; i < pop.size(); ++i) {
    if (!pop[i].frozen) ws.order.push_back(static_cast<std::int32_t>(i));
  }

  const double sa = params.sensor_angle * kDegToRad;
  const double ca = std::cos(sa);
  const double sn = std::sin(sa);
  std::shuffle(ws.order.begin(), ws.order.end(), rng);
  for (std::int32_t i : ws.order) pop[i].heading = senseWith(pop[i], field, params, ca, sn, rng);

  std::shuffle(ws.order.begin(), ws.order.end(), rng);
  for (std::int32_t i : ws.order) attemptMove(pop[i], i, occ, mask, field, params);

  diffuse(field, mask, params.damp, ws.scratch);
}

}  // namespace physadder
