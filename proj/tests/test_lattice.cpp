#include <doctest.h>

#include <cstring>
#include <random>
#include <sstream>

#include "physadder/errors.hpp"
#include "physadder/lattice.hpp"

using namespace physadder;

namespace {

TrailField randomField(int w, int h, std::uint64_t seed, double hi = 10.0) {
  TrailField f(w, h);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, hi);
  for (auto& v : f.values()) v = u(rng);
  return f;
}

// Zero-padded copy, then the 3x3 box sum read off the padded grid.
std::vector<double> bruteDiffuse(const TrailField& f, const HabitableMask& m, double damp) {
  const int w = f.width();
  const int h = f.height();
  std::vector<double> pad(static_cast<std::size_t>(w + 2) * (h + 2), 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) pad[(y + 1) * (w + 2) + (x + 1)] = f.at(x, y);
  }
  std::vector<double> out(static_cast<std::size_t>(w) * h, 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!m.contains(x, y)) continue;
      double s = 0.0;
      for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < 3; ++i) s += pad[(y + j) * (w + 2) + (x + i)];
      }
      out[y * w + x] = damp * s / 9.0;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("default geometry") {
  const ArenaGeometry g;
  CHECK(g.lattice_width == 360);
  CHECK(g.lattice_height == 66);
  CHECK(g.habitable.width == 300);
  CHECK(g.habitable.height == 20);
  CHECK(Rect{0, 0, 360, 66}.containsRect(g.habitable));
  CHECK(g.samplingWindow() == Rect{g.habitable.x, g.habitable.y, 20, 20});
}

TEST_CASE("buildMask cell counts") {
  ArenaGeometry g;
  g.fraction = 1.0;
  CHECK(buildMask(g).count() == 6000);
  g.fraction = 0.75;
  CHECK(buildMask(g).count() == 225 * 20);
  g.fraction = 0.5;
  CHECK(buildMask(g).count() == 3000);
  g.fraction = 0.25;
  CHECK(buildMask(g).count() == 1500);
}

TEST_CASE("buildMask keeps the leftmost columns") {
  ArenaGeometry g;
  g.fraction = 0.25;
  const HabitableMask m = buildMask(g);
  const Rect h = g.habitable;
  CHECK(m.contains(h.x, h.y));
  CHECK(m.contains(h.x + 74, h.y + 19));
  CHECK_FALSE(m.contains(h.x + 75, h.y));
  CHECK_FALSE(m.contains(h.x - 1, h.y));
  CHECK_FALSE(m.contains(h.x, h.y - 1));
  CHECK_FALSE(m.contains(h.x, h.y + 20));
}

TEST_CASE("buildMask rejects fractions outside (0, 1]") {
  ArenaGeometry g;
  for (double f : {0.0, -0.1, 1.0000001, 1.5}) {
    g.fraction = f;
    CHECK_THROWS_AS(buildMask(g), InvalidGeometry);
  }
  g.fraction = 1.0;
  g.habitable = {100, 50, 300, 20};
  CHECK_THROWS_AS(buildMask(g), InvalidGeometry);
}

TEST_CASE("buildMask is monotone in fraction") {
  ArenaGeometry g;
  std::vector<HabitableMask> masks;
  const std::vector<double> fr{0.1, 0.25, 0.33, 0.5, 0.75, 0.9, 1.0};
  for (double f : fr) {
    g.fraction = f;
    masks.push_back(buildMask(g));
  }
  for (std::size_t a = 0; a + 1 < masks.size(); ++a) {
    for (int y = 0; y < g.lattice_height; ++y) {
      for (int x = 0; x < g.lattice_width; ++x) {
        if (masks[a].contains(x, y)) REQUIRE(masks[a + 1].contains(x, y));
      }
    }
  }
}

TEST_CASE("diffuse of a uniform interior is 0.99c") {
  TrailField f(10, 10);
  for (auto& v : f.values()) v = 4.0;
  const HabitableMask all(10, 10, {0, 0, 10, 10});
  diffuse(f, all);
  CHECK(f.at(5, 5) == doctest::Approx(0.99 * 4.0).epsilon(1e-15));
  CHECK(f.at(0, 5) == doctest::Approx(0.99 * 4.0 * 6.0 / 9.0).epsilon(1e-15));
  CHECK(f.at(0, 0) == doctest::Approx(0.99 * 4.0 * 4.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("diffuse spreads an impulse of 9 to 0.99 on each of nine cells") {
  TrailField f(7, 7);
  f.at(3, 3) = 9.0;
  const HabitableMask all(7, 7, {0, 0, 7, 7});
  diffuse(f, all);
  for (int y = 0; y < 7; ++y) {
    for (int x = 0; x < 7; ++x) {
      const bool near = std::abs(x - 3) <= 1 && std::abs(y - 3) <= 1;
      CHECK(f.at(x, y) == doctest::Approx(near ? 0.99 : 0.0).epsilon(1e-15));
    }
  }
}

TEST_CASE("diffuse matches a brute-force padded sum") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    TrailField f = randomField(10, 10, seed);
    const HabitableMask m(10, 10, {static_cast<int>(seed % 3), 1, 7, 8});
    const auto expect = bruteDiffuse(f, m, 0.99);
    diffuse(f, m);
    for (std::size_t i = 0; i < expect.size(); ++i) {
      CHECK(f.values()[i] == doctest::Approx(expect[i]).epsilon(1e-14));
    }
  }
}

TEST_CASE("OpenMP diffuse is bitwise identical to the serial reference") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    TrailField a = randomField(360, 66, seed);
    TrailField b = a;
    ArenaGeometry g;
    g.fraction = 0.2 * static_cast<double>(seed);
    const HabitableMask m = buildMask(g);
    TrailField scratch(1, 1);
    for (int step = 0; step < 5; ++step) {
      diffuse(a, m, 0.99, scratch);
      diffuseReference(b, m, 0.99);
    }
    CHECK(std::memcmp(a.values().data(), b.values().data(), a.values().size() * sizeof(double)) ==
          0);
  }
}

TEST_CASE("diffusion mass bound, non-negativity and zero idempotence") {
  for (std::uint64_t seed = 100; seed < 150; ++seed) {
    TrailField f = randomField(10, 10, seed);
    const int x0 = static_cast<int>(seed % 4);
    const HabitableMask m(10, 10, {x0, 0, 10 - x0, 10});
    const double before = f.total();
    diffuse(f, m);
    CHECK(f.total() <= 0.99 * before * (1.0 + 1e-12));
    for (double v : f.values()) CHECK(v >= 0.0);
  }
  TrailField z(10, 10);
  diffuse(z, HabitableMask(10, 10, {0, 0, 10, 10}));
  for (double v : z.values()) CHECK(v == 0.0);
}

TEST_CASE("diffuse zeroes cells outside the mask") {
  TrailField f = randomField(12, 8, 42);
  const HabitableMask m(12, 8, {2, 2, 5, 3});
  diffuse(f, m);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 12; ++x) {
      if (!m.contains(x, y)) CHECK(f.at(x, y) == 0.0);
    }
  }
}

TEST_CASE("diffuse rejects mismatched shapes") {
  TrailField f(5, 5);
  CHECK_THROWS_AS(diffuse(f, HabitableMask(6, 5, {0, 0, 1, 1})), InvalidArgument);
  CHECK_THROWS_AS(diffuseReference(f, HabitableMask(5, 4, {0, 0, 1, 1})), InvalidArgument);
}

TEST_CASE("deposit") {
  TrailField f(4, 4);
  deposit(f, 1, 2, 5.0);
  CHECK(f.at(1, 2) == 5.0);
  CHECK(f.total() == 5.0);
  deposit(f, 1, 2, 0.0);
  CHECK(f.at(1, 2) == 5.0);
  deposit(f, 1, 2, 5.0);
  CHECK(f.at(1, 2) == 10.0);
  CHECK_THROWS_AS(deposit(f, 4, 0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(deposit(f, 0, -1, 1.0), InvalidArgument);
}

TEST_CASE("meanInWindow") {
  TrailField f(30, 30);
  const Rect w{5, 5, 20, 20};
  CHECK(meanInWindow(f, w) == 0.0);
  for (auto& v : f.values()) v = 2.5;
  CHECK(meanInWindow(f, w) == 2.5);
  for (auto& v : f.values()) v = 0.0;
  f.at(10, 10) = 400.0;
  CHECK(meanInWindow(f, w) == 1.0);
  CHECK_THROWS_AS(meanInWindow(f, {15, 15, 20, 20}), InvalidArgument);
  CHECK_THROWS_AS(meanInWindow(f, {0, 0, 0, 5}), InvalidArgument);
}

TEST_CASE("occupancy grid holds one particle per cell") {
  OccupancyGrid g(3, 3);
  g.place(1, 1, 7);
  CHECK(g.at(1, 1) == 7);
  CHECK_THROWS_AS(g.place(1, 1, 8), InvalidArgument);
  g.move(1, 1, 2, 1);
  CHECK_FALSE(g.occupied(1, 1));
  CHECK(g.at(2, 1) == 7);
}

TEST_CASE("text grid export") {
  TrailField f(3, 2);
  f.at(0, 0) = 1.5;
  f.at(2, 1) = 4.0;
  std::ostringstream os;
  writeTextGrid(os, f);
  CHECK(os.str() == "1.5 0 0\n0 0 4\n");
}

TEST_CASE("PGM export is 16-bit big-endian with min/max header") {
  TrailField f(2, 2);
  f.at(0, 0) = 1.0;
  f.at(1, 0) = 3.0;
  f.at(0, 1) = 2.0;
  f.at(1, 1) = 1.0;
  std::ostringstream os;
  writePgm(os, f);
  const std::string s = os.str();
  const std::string header = "P5\n# min=1 max=3\n2 2\n65535\n";
  REQUIRE(s.substr(0, header.size()) == header);
  const std::string px = s.substr(header.size());
  REQUIRE(px.size() == 8);
  auto at = [&](int i) {
    return (static_cast<unsigned char>(px[2 * i]) << 8) | static_cast<unsigned char>(px[2 * i + 1]);
  };
  CHECK(at(0) == 0);
  CHECK(at(1) == 65535);
  CHECK(at(2) == 32768);
  CHECK(at(3) == 0);
}
