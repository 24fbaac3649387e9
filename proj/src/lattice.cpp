#include "physadder/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <string>

#include "physadder/csv.hpp"
#include "physadder/errors.hpp"

namespace physadder {

void ArenaGeometry::validate() const {
  if (lattice_width <= 0 || lattice_height <= 0) {
    throw InvalidGeometry("lattice dimensions must be positive");
  }
  if (habitable.width <= 0 || habitable.height <= 0 ||
      !Rect{0, 0, lattice_width, lattice_height}.containsRect(habitable)) {
    throw InvalidGeometry("habitable rect must be non-empty and inside the lattice");
  }
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw InvalidGeometry("arena fraction must lie in (0, 1], got " + formatReal(fraction));
  }
  if (constrainedColumns() < 1) {
    throw InvalidGeometry("arena fraction " + formatReal(fraction) + " leaves no habitable column");
  }
}

int ArenaGeometry::constrainedColumns() const {
  return static_cast<int>(std::lround(fraction * habitable.width));
}

Rect ArenaGeometry::constrainedRect() const {
  return {habitable.x, habitable.y, constrainedColumns(), habitable.height};
}

Rect ArenaGeometry::samplingWindow() const {
  return {habitable.x, habitable.y, kWindowSize, kWindowSize};
}

TrailField::TrailField(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) throw InvalidArgument("field dimensions must be positive");
  values_.assign(static_cast<std::size_t>(width) * height, 0.0);
}

double TrailField::total() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

HabitableMask::HabitableMask(int width, int height, const Rect& rect)
    : width_(width), height_(height), rect_(rect) {
  if (width <= 0 || height <= 0) throw InvalidArgument("mask dimensions must be positive");
  if (!Rect{0, 0, width, height}.containsRect(rect)) {
    throw InvalidGeometry("mask rect leaves the lattice");
  }
  cells_.assign(static_cast<std::size_t>(width) * height, 0);
  for (int y = rect.y; y < rect.y + rect.height; ++y) {
    for (int x = rect.x; x < rect.x + rect.width; ++x) {
      cells_[static_cast<std::size_t>(y) * width + x] = 1;
    }
  }
}

long HabitableMask::count() const {
  return static_cast<long>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

HabitableMask buildMask(const ArenaGeometry& geometry) {
  geometry.validate();
  return HabitableMask(geometry.lattice_width, geometry.lattice_height,
                       geometry.constrainedRect());
}

OccupancyGrid::OccupancyGrid(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) throw InvalidArgument("grid dimensions must be positive");
  cells_.assign(static_cast<std::size_t>(width) * height, kEmpty);
}

void OccupancyGrid::place(int x, int y, std::int32_t id) {
  auto& c = cells_[static_cast<std::size_t>(y) * width_ + x];
  if (c != kEmpty) {
    throw InvalidArgument("cell (" + std::to_string(x) + "," + std::to_string(y) +
                          ") already occupied");
  }
  c = id;
}

void OccupancyGrid::clear(int x, int y) { cells_[static_cast<std::size_t>(y) * width_ + x] = kEmpty; }

void OccupancyGrid::move(int from_x, int from_y, int to_x, int to_y) {
  const std::int32_t id = at(from_x, from_y);
  clear(from_x, from_y);
  place(to_x, to_y, id);
}

namespace {

void requireSameShape(const TrailField& field, const HabitableMask& mask) {
  if (field.width() != mask.width() || field.height() != mask.height()) {
    throw InvalidArgument("field and mask dimensions differ");
  }
}

// Neighbour sum in a fixed order (row-major over the 3x3 block) so the
// parallel and reference paths round identically.
inline double neighbourhoodSum(const double* v, int w, int h, int x, int y) {
  double s = 0.0;
  for (int dy = -1; dy <= 1; ++dy) {
    const int ny = y + dy;
    if (ny < 0 || ny >= h) continue;
    const double* row = v + static_cast<std::ptrdiff_t>(ny) * w;
    for (int dx = -1; dx <= 1; ++dx) {
      const int nx = x + dx;
      if (nx < 0 || nx >= w) continue;
      s += row[nx];
    }
  }
  return s;
}

}  // namespace

void diffuse(TrailField& field, const HabitableMask& mask, double damp, TrailField& scratch) {
  requireSameShape(field, mask);
  if (scratch.width() != field.width() || scratch.height() != field.height()) {
    scratch = TrailField(field.width(), field.height());
  }
  const int w = field.width();
  const int h = field.height();
  const Rect r = mask.rect();
  const double* in = field.values().data();
  double* out = scratch.values().data();

  std::fill(out, out + static_cast<std::ptrdiff_t>(w) * h, 0.0);

#pragma omp parallel for schedule(static)
  for (int y = r.y; y < r.y + r.height; ++y) {
    double* orow = out + static_cast<std::ptrdiff_t>(y) * w;
    for (int x = r.x; x < r.x + r.width; ++x) {
      orow[x] = damp * (neighbourhoodSum(in, w, h, x, y) / 9.0);
    }
  }
  std::swap(field.values(), scratch.values());
}

void diffuse(TrailField& field, const HabitableMask& mask, double damp) {
  TrailField scratch(field.width(), field.height());
  diffuse(field, mask, damp, scratch);
}

void diffuseReference(TrailField& field, const HabitableMask& mask, double damp) {
  requireSameShape(field, mask);
  const int w = field.width();
  const int h = field.height();
  std::vector<double> out(field.values().size(), 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask.contains(x, y)) continue;
      out[field.index(x, y)] = damp * (neighbourhoodSum(field.values().data(), w, h, x, y) / 9.0);
    }
  }
  field.values() = std::move(out);
}

void deposit(TrailField& field, int x, int y, double amount) {
  if (!field.inBounds(x, y)) {
    throw InvalidArgument("deposit cell (" + std::to_string(x) + "," + std::to_string(y) +
                          ") outside the lattice");
  }
  field.at(x, y) += amount;
}

double meanInWindow(const TrailField& field, const Rect& window) {
  if (window.width <= 0 || window.height <= 0 ||
      !Rect{0, 0, field.width(), field.height()}.containsRect(window)) {
    throw InvalidArgument("sampling window must be non-empty and inside the lattice");
  }
  double s = 0.0;
  for (int y = window.y; y < window.y + window.height; ++y) {
    for (int x = window.x; x < window.x + window.width; ++x) s += field.at(x, y);
  }
  return s / static_cast<double>(window.area());
}

void writeTextGrid(std::ostream& os, const TrailField& field) {
  for (int y = 0; y < field.height(); ++y) {
    for (int x = 0; x < field.width(); ++x) {
      if (x > 0) os << ' ';
      os << formatReal(field.at(x, y));
    }
    os << '\n';
  }
}

void writePgm(std::ostream& os, const TrailField& field) {
  const auto [lo_it, hi_it] = std::minmax_element(field.values().begin(), field.values().end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const double span = hi - lo;
  os << "P5\n# min=" << formatReal(lo) << " max=" << formatReal(hi) << '\n'
     << field.width() << ' ' << field.height() << "\n65535\n";
  for (double v : field.values()) {
    const double t = span > 0.0 ? (v - lo) / span : 0.0;
    const auto q = static_cast<std::uint16_t>(std::lround(t * 65535.0));
    const char bytes[2] = {static_cast<char>(q >> 8), static_cast<char>(q & 0xff)};
    os.write(bytes, 2);
  }
}

void writeTextGrid(const std::filesystem::path& path, const TrailField& field) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write " + path.string());
  writeTextGrid(os, field);
}

void writePgm(const std::filesystem::path& path, const TrailField& field) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write " + path.string());
  writePgm(os, field);
}

}  // namespace physadder
