#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "physadder/analysis.hpp"
#include "physadder/errors.hpp"

using namespace physadder;

namespace {

constexpr double kSlope = -0.0015;
constexpr double kIntercept = 0.0109;
constexpr std::array<double, 4> kLengths{0.75, 1.5, 2.25, 3.0};

double onLine(double x) { return kSlope * x + kIntercept; }

VoltageTrace sineTrace(double length, double freq, double rate, std::size_t n, double phase = 0.0,
                       double noise = 0.0, std::uint64_t seed = 0) {
  VoltageTrace t;
  t.length_cm = length;
  t.sample_rate_hz = rate;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double time = static_cast<double>(i) / rate;
    t.samples.push_back(0.02 * std::sin(2.0 * std::numbers::pi * freq * time + phase) +
                        noise * g(rng) + 0.1);
  }
  return t;
}

}  // namespace

TEST_CASE("loadTraces reads blocks") {
  std::istringstream is(
      "# trace,0.75,2\n0.1\n0.2\n\n0.3\n"
      "# trace,3,4.5\n-1e-3\n+2\n");
  const auto t = loadTraces(is);
  REQUIRE(t.size() == 2);
  CHECK(t[0].length_cm == 0.75);
  CHECK(t[0].sample_rate_hz == 2.0);
  CHECK(t[0].samples == std::vector<double>{0.1, 0.2, 0.3});
  CHECK(t[0].line == 1);
  CHECK(t[1].length_cm == 3.0);
  CHECK(t[1].sample_rate_hz == 4.5);
  CHECK(t[1].samples == std::vector<double>{-1e-3, 2.0});
  CHECK(t[1].line == 6);
}

TEST_CASE("loadTraces errors") {
  std::istringstream empty("");
  CHECK_THROWS_AS(loadTraces(empty), FormatError);
  std::istringstream blank("\n  \n");
  CHECK_THROWS_AS(loadTraces(blank), FormatError);
  std::istringstream headless("0.1\n0.2\n");
  CHECK_THROWS_AS(loadTraces(headless), FormatError);

  std::istringstream bad("# trace,1,2\n0.1\n0.2\nvolts\n");
  try {
    loadTraces(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  std::istringstream bad_rate("# trace,1,0\n0.1\n");
  CHECK_THROWS_AS(loadTraces(bad_rate), ParseError);
  std::istringstream bad_header("# trace,1\n0.1\n");
  CHECK_THROWS_AS(loadTraces(bad_header), ParseError);
}

TEST_CASE("trace writer round-trips") {
  const std::vector<VoltageTrace> in{sineTrace(1.5, 0.01, 1.0, 20), sineTrace(3.0, 0.02, 2.0, 18)};
  std::stringstream ss;
  writeTraces(ss, in);
  const auto out = loadTraces(ss);
  REQUIRE(out.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(out[i].length_cm == in[i].length_cm);
    CHECK(out[i].sample_rate_hz == in[i].sample_rate_hz);
    CHECK(out[i].samples == in[i].samples);
  }
}

TEST_CASE("linearFit on exact lines") {
  std::vector<double> xs(kLengths.begin(), kLengths.end());
  std::vector<double> ys;
  for (double x : xs) ys.push_back(onLine(x));
  const LinearFit f = linearFit(xs, ys);
  CHECK(f.slope == doctest::Approx(kSlope).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(kIntercept).epsilon(1e-12));
  CHECK(std::abs(f.r2 - 1.0) <= 1e-12);
  CHECK_FALSE(f.degenerate);

  const LinearFit g = linearFit({0, 1, 2}, {1, 3, 5});
  CHECK(g.slope == doctest::Approx(2.0));
  CHECK(g.intercept == doctest::Approx(1.0));
  CHECK(g.r2 == doctest::Approx(1.0));
}

TEST_CASE("linearFit degenerate cases") {
  const LinearFit c = linearFit({1, 2, 3}, {4, 4, 4});
  CHECK(c.slope == 0.0);
  CHECK(c.r2 == 0.0);
  CHECK(c.degenerate);
  CHECK_THROWS_AS(linearFit({2, 2, 2}, {1, 2, 3}), DegenerateFit);
  CHECK_THROWS_AS(linearFit({2}, {1}), DegenerateFit);
  CHECK_THROWS_AS(linearFit({1, 2}, {1}), InvalidArgument);
}

TEST_CASE("OLS residuals are orthogonal to 1 and x, fit is order invariant") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> xs(12);
    std::vector<double> ys(12);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      xs[i] = u(rng);
      ys[i] = 0.7 * xs[i] - 2.0 + u(rng);
    }
    const LinearFit f = linearFit(xs, ys);
    double r_sum = 0.0;
    double rx_sum = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double r = ys[i] - (f.slope * xs[i] + f.intercept);
      r_sum += r;
      rx_sum += r * xs[i];
      scale += std::abs(ys[i]) * (1.0 + std::abs(xs[i]));
    }
    CHECK(std::abs(r_sum) <= 1e-9 * scale);
    CHECK(std::abs(rx_sum) <= 1e-9 * scale);
    CHECK(f.r2 <= 1.0);
    CHECK(f.r2 >= 0.0);

    std::vector<std::size_t> idx(xs.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<double> xs2;
    std::vector<double> ys2;
    for (auto i : idx) {
      xs2.push_back(xs[i]);
      ys2.push_back(ys[i]);
    }
    const LinearFit g = linearFit(xs2, ys2);
    CHECK(g.slope == doctest::Approx(f.slope).epsilon(1e-12));
    CHECK(g.intercept == doctest::Approx(f.intercept).epsilon(1e-12));
    CHECK(g.r2 == doctest::Approx(f.r2).epsilon(1e-12));
  }
}

TEST_CASE("study recovers the line from clean synthetic sines") {
  std::vector<VoltageTrace> traces;
  for (double len : kLengths) traces.push_back(sineTrace(len, onLine(len), 1.0, 20000, 0.4));
  const LengthStudy s = lengthFrequencyStudy(traces);
  CHECK(s.warnings.empty());
  REQUIRE(s.summary.size() == 4);
  CHECK(std::abs(s.fit.slope - kSlope) <= 0.05 * std::abs(kSlope));
  CHECK(s.fit.r2 >= 0.99);
  for (const auto& row : s.summary) {
    CHECK(row.n == 1);
    CHECK(row.std_freq_hz == 0.0);
    CHECK(std::abs(row.mean_freq_hz - onLine(row.length_cm)) <= 1.0 / 20000.0);
  }
}

TEST_CASE("study with jittered noisy sines finds a negative slope") {
  std::vector<VoltageTrace> traces;
  std::mt19937_64 rng(8);
  std::normal_distribution<double> jitter(0.0, 0.0002);
  std::uint64_t seed = 1;
  for (double len : kLengths) {
    for (int k = 0; k < 10; ++k) {
      traces.push_back(sineTrace(len, onLine(len) + jitter(rng), 1.0, 8000, 0.1 * k, 0.01, seed++));
    }
  }
  const LengthStudy s = lengthFrequencyStudy(traces);
  CHECK(s.traces.size() == 40);
  CHECK(s.fit.n == 40);
  CHECK(s.fit.slope < 0.0);
  CHECK(s.fit.r2 > 0.0);
  CHECK(s.fit.r2 <= 1.0);
  for (const auto& row : s.summary) {
    CHECK(row.n == 10);
    CHECK(row.std_freq_hz > 0.0);
  }
}

TEST_CASE("study excludes short traces with a warning and needs two lengths") {
  std::vector<VoltageTrace> traces{sineTrace(0.75, 0.01, 1.0, 4000), sineTrace(1.5, 0.009, 1.0, 4000),
                                   sineTrace(2.25, 0.008, 1.0, 10)};
  const LengthStudy s = lengthFrequencyStudy(traces);
  CHECK(s.traces.size() == 2);
  REQUIRE(s.warnings.size() == 1);
  CHECK(s.warnings[0].find("trace 3") != std::string::npos);

  const std::vector<VoltageTrace> one{sineTrace(1.5, 0.009, 1.0, 4000),
                                      sineTrace(1.5, 0.0091, 1.0, 4000)};
  CHECK_THROWS_AS(lengthFrequencyStudy(one), DegenerateFit);
}

TEST_CASE("summary and fit outputs") {
  std::ostringstream a;
  writeSummaryCsv(a, {{0.75, 0.01, 0.001, 10}, {3, 0.0064, 0, 1}});
  CHECK(a.str() == "length_cm,mean_freq_hz,std_freq_hz,n\n0.75,0.01,0.001,10\n3,0.0064,0,1\n");
  std::ostringstream b;
  LinearFit f;
  f.slope = -0.0015;
  f.intercept = 0.0109;
  f.r2 = 0.5;
  writeFitReport(b, f);
  CHECK(b.str() == "slope,intercept,r2\n-0.0015,0.0109,0.5\n");
}
