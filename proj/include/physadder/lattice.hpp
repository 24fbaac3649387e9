#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace physadder {

struct Rect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  bool contains(int cx, int cy) const {
    return cx >= x && cx < x + width && cy >= y && cy < y + height;
  }
  bool containsRect(const Rect& r) const {
    return r.x >= x && r.y >= y && r.x + r.width <= x + width && r.y + r.height <= y + height;
  }
  long area() const { return static_cast<long>(width) * height; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

inline constexpr int kWindowSize = 20;

/// Lattice, full habitable rectangle and length fraction. The constrained
/// rectangle keeps the leftmost round(fraction * habitable.width) columns.
struct ArenaGeometry {
  int lattice_width = 360;
  int lattice_height = 66;
  Rect habitable{30, 23, 300, 20};
  double fraction = 1.0;

  // Throws InvalidGeometry.
  void validate() const;
  int constrainedColumns() const;
  Rect constrainedRect() const;
  // 20x20 flux sampling window at the left end of the habitable rect.
  Rect samplingWindow() const;
};

class TrailField {
 public:
  TrailField(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  bool inBounds(int x, int y) const { return x >= 0 && x < width_ && y >= 0 && y < height_; }

  double at(int x, int y) const { return values_[index(x, y)]; }
  double& at(int x, int y) { return values_[index(x, y)]; }
  // 0 for cells outside the lattice.
  double read(int x, int y) const { return inBounds(x, y) ? values_[index(x, y)] : 0.0; }

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  double total() const;

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

 private:
  int width_;
  int height_;
  std::vector<double> values_;
};

class HabitableMask {
 public:
  HabitableMask(int width, int height, const Rect& rect);

  int width() const { return width_; }
  int height() const { return height_; }
  bool contains(int x, int y) const {
    return x >= 0 && x < width_ && y >= 0 && y < height_ &&
           cells_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }
  const Rect& rect() const { return rect_; }
  long count() const;

 private:
  int width_;
  int height_;
  Rect rect_;
  std::vector<std::uint8_t> cells_;
};

// Mask of the constrained rect. Throws InvalidGeometry for a fraction
// outside (0, 1] or a habitable rect that leaves the lattice.
HabitableMask buildMask(const ArenaGeometry& geometry);

class OccupancyGrid {
 public:
  static constexpr std::int32_t kEmpty = -1;

  OccupancyGrid(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  std::int32_t at(int x, int y) const { return cells_[static_cast<std::size_t>(y) * width_ + x]; }
  bool occupied(int x, int y) const { return at(x, y) != kEmpty; }
  void place(int x, int y, std::int32_t id);
  void clear(int x, int y);
  void move(int from_x, int from_y, int to_x, int to_y);
  const std::vector<std::int32_t>& cells() const { return cells_; }

 private:
  int width_;
  int height_;
  std::vector<std::int32_t> cells_;
};

/// One damped 3x3 mean-filter pass. Every cell becomes
/// damp * (sum of its in-lattice 3x3 neighbourhood) / 9; cells outside the
/// mask become 0. `scratch` is resized as needed and holds the previous
/// field on return. Rows are processed in parallel with OpenMP.
void diffuse(TrailField& field, const HabitableMask& mask, double damp, TrailField& scratch);
void diffuse(TrailField& field, const HabitableMask& mask, double damp = 0.99);

// Single-threaded whole-lattice version; bitwise identical to diffuse().
void diffuseReference(TrailField& field, const HabitableMask& mask, double damp = 0.99);

// Throws InvalidArgument for a cell outside the lattice.
void deposit(TrailField& field, int x, int y, double amount);

// Arithmetic mean over a window. Throws InvalidArgument when the window
// is empty or leaves the lattice.
double meanInWindow(const TrailField& field, const Rect& window);

// One row per line, space-separated values.
void writeTextGrid(std::ostream& os, const TrailField& field);
// Binary 16-bit PGM, linearly scaled from [min, max] to [0, 65535]; the
// header carries "# min=<v> max=<v>".
void writePgm(std::ostream& os, const TrailField& field);
void writeTextGrid(const std::filesystem::path& path, const TrailField& field);
void writePgm(const std::filesystem::path& path, const TrailField& field);

}  // namespace physadder
