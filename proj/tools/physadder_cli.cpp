#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "physadder/adder.hpp"
#include "physadder/analysis.hpp"
#include "physadder/config.hpp"
#include "physadder/csv.hpp"
#include "physadder/errors.hpp"
#include "physadder/lattice.hpp"
#include "physadder/physical.hpp"
#include "physadder/simulation.hpp"
#include "physadder/spectral.hpp"
#include "physadder/svg.hpp"

namespace fs = std::filesystem;
using namespace physadder;

namespace {

struct Globals {
  std::string config_path;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
};

RunConfig loadRunConfig(const Globals& g) {
  RunConfig cfg;
  if (!g.config_path.empty()) readConfig(fs::path(g.config_path), cfg);
  return cfg;
}

fs::path prepareOut(const Globals& g) {
  const fs::path out(g.out_dir);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) {
    throw IoError("cannot create output directory " + out.string());
  }
  return out;
}

void writeText(const fs::path& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write " + path.string());
  os << text;
  if (!os) throw IoError("write failed for " + path.string());
}

std::string seriesFileName(double fraction, std::uint64_t seed) {
  return "flux_f" + formatReal(fraction) + "_s" + std::to_string(seed) + ".csv";
}

PlotSeries fluxSeriesPlot(const FluxSeries& s, const std::string& label) {
  PlotSeries p;
  p.label = label;
  for (std::size_t i = 0; i < s.size(); ++i) {
    p.x.push_back(s.steps[i]);
    p.y.push_back(s.values[i]);
  }
  return p;
}

struct FractionStats {
  double mean = 0.0;
  double stddev = 0.0;
  int n = 0;
};

std::map<double, FractionStats> statsByFraction(const std::vector<FrequencySample>& samples) {
  std::map<double, std::vector<double>> groups;
  for (const auto& s : samples) groups[s.fraction].push_back(s.frequency);
  std::map<double, FractionStats> out;
  for (const auto& [f, v] : groups) {
    FractionStats st;
    st.n = static_cast<int>(v.size());
    for (double x : v) st.mean += x;
    st.mean /= st.n;
    if (st.n > 1) {
      double ss = 0.0;
      for (double x : v) ss += (x - st.mean) * (x - st.mean);
      st.stddev = std::sqrt(ss / (st.n - 1));
    }
    out[f] = st;
  }
  return out;
}

void writeFrequencyPlot(const fs::path& path, const std::vector<FrequencySample>& samples) {
  PlotSeries p;
  p.label = "mean +/- sd";
  p.markers = true;
  for (const auto& [f, st] : statsByFraction(samples)) {
    p.x.push_back(f);
    p.y.push_back(st.mean);
    p.error.push_back(st.stddev);
  }
  writeSvgPlot(path, {"Dominant frequency vs arena fraction", "arena length fraction",
                      "frequency (cycles/step)"},
               {p});
}

// ---- subcommands --------------------------------------------------------

struct SimulateOpts {
  double fraction = 1.0;
  bool has_fraction = false;
  std::vector<int> snapshots;
};

int cmdSimulate(const Globals& g, const SimulateOpts& o) {
  RunConfig cfg = loadRunConfig(g);
  if (o.has_fraction) cfg.geometry.fraction = o.fraction;
  cfg.validate();
  const fs::path out = prepareOut(g);

  std::cout << "seed " << g.seed << '\n';
  Simulation sim(cfg, g.seed);
  std::vector<int> snaps = o.snapshots;
  std::sort(snaps.begin(), snaps.end());
  std::size_t next = 0;
  auto snapshot = [&] {
    while (next < snaps.size() && snaps[next] == sim.stepIndex()) {
      const std::string base = "field_" + std::to_string(sim.stepIndex());
      writePgm(out / (base + ".pgm"), sim.field());
      writeTextGrid(out / (base + ".txt"), sim.field());
      ++next;
    }
  };
  for (int s : snaps) {
    if (s < 0 || s > cfg.total_steps) {
      throw InvalidArgument("snapshot step " + std::to_string(s) + " outside [0, total steps]");
    }
  }
  snapshot();
  while (sim.stepIndex() < cfg.total_steps) {
    sim.step();
    snapshot();
  }
  const FluxSeries& series = sim.series();
  writeFluxCsv(out / "flux.csv", series);

  const auto tail = series.afterWarmup(cfg.warmup_steps);
  const Spectrum spec = periodogram(tail, cfg.params.sample_interval);
  writeSpectrumCsv(out / "spectrum.csv", spec);
  const DominantFrequency dom = dominantFrequency(spec);

  std::ostringstream cfg_text;
  writeConfig(cfg_text, cfg);
  writeText(out / "config_used.txt", cfg_text.str());
  writeSvgPlot(out / "flux.svg",
               {"Mean flux in sampling window (fraction " + formatReal(cfg.geometry.fraction) + ")",
                "scheduler step", "mean flux"},
               {fluxSeriesPlot(series, "seed " + std::to_string(g.seed))});

  std::cout << "samples " << series.size() << '\n'
            << "dominant_frequency " << formatReal(dom.frequency) << " cycles/step (bin width "
            << formatReal(dom.bin_width) << ")\n"
            << "wrote " << (out / "flux.csv").string() << '\n';
  return 0;
}

struct SweepOpts {
  std::vector<double> fractions{1.0, 0.75, 0.5, 0.25};
  int runs = 10;
};

int cmdSweep(const Globals& g, const SweepOpts& o) {
  RunConfig cfg = loadRunConfig(g);
  const fs::path out = prepareOut(g);
  std::cout << "seeds " << g.seed << ".." << g.seed + static_cast<std::uint64_t>(o.runs - 1)
            << " per fraction\n";
  const auto runs = sweep(o.fractions, o.runs, cfg, g.seed);

  fs::create_directories(out / "series");
  std::ostringstream manifest;
  manifest << "fraction,seed,series_path,dominant_frequency\n";
  for (const auto& r : runs) {
    const std::string rel = "series/" + seriesFileName(r.fraction, r.seed);
    writeFluxCsv(out / rel, r.series);
    const double f = fluxDominantFrequency(r.series, cfg.warmup_steps).frequency;
    manifest << formatReal(r.fraction) << ',' << r.seed << ',' << rel << ',' << formatReal(f)
             << '\n';
  }
  writeText(out / "sweep_manifest.csv", manifest.str());
  writeFrequencyPlot(out / "sweep.svg", sweepFrequencies(runs, cfg.warmup_steps));
  std::cout << "wrote " << runs.size() << " series and " << (out / "sweep_manifest.csv").string()
            << '\n';
  return 0;
}

int cmdCalibrate(const Globals& g, int runs_per_fraction) {
  RunConfig cfg = loadRunConfig(g);
  const fs::path out = prepareOut(g);
  const FractionMap map;
  const std::vector<double> fractions(map.fractions().begin(), map.fractions().end());
  std::cout << "seeds " << g.seed << ".." << g.seed + static_cast<std::uint64_t>(runs_per_fraction - 1)
            << " per fraction\n";
  const auto runs = sweep(fractions, runs_per_fraction, cfg, g.seed);
  const auto samples = sweepFrequencies(runs, cfg.warmup_steps);

  std::ostringstream per_run;
  per_run << "fraction,seed,dominant_frequency\n";
  for (std::size_t i = 0; i < runs.size(); ++i) {
    per_run << formatReal(runs[i].fraction) << ',' << runs[i].seed << ','
            << formatReal(samples[i].frequency) << '\n';
  }

  writeText(out / "calibration_runs.csv", per_run.str());
  const CalibrationTable cal = calibrate(samples, map, false);
  writeCalibrationCsv(out / "calibration.csv", cal);
  writeFrequencyPlot(out / "calibration.svg", samples);

  for (int b = 0; b < kBinCount; ++b) {
    std::cout << "bin " << b << " fraction " << formatReal(cal.fractions[b]) << " mean "
              << formatReal(cal.mean_frequency[b]) << '\n';
  }
  if (cal.lowConfidence()) {
    std::cout << "warning: low-confidence calibration (" << cal.min_runs_per_bin
              << " run per fraction)\n";
  }
  std::cout << "wrote " << (out / "calibration.csv").string() << '\n';
  return 0;
}

struct AddOpts {
  int x = 0;
  int y = 0;
  int cin = 0;
  std::string calibration;
  int votes = 1;
};

int cmdAdd(const Globals& g, const AddOpts& o) {
  RunConfig cfg = loadRunConfig(g);
  const CalibrationTable cal = readCalibrationCsv(fs::path(o.calibration));
  const fs::path out = prepareOut(g);
  const auto res = physicalFullAdd({o.x, o.y, o.cin}, cal, cfg, g.seed, o.votes);

  std::ostringstream report;
  report << "vote,seed,fraction,frequency,bin\n";
  for (std::size_t v = 0; v < res.seeds.size(); ++v) {
    report << v << ',' << res.seeds[v] << ',' << formatReal(res.fraction) << ','
           << formatReal(res.frequencies[v]) << ',' << res.bins[v] << '\n';
  }
  writeText(out / "add_report.csv", report.str());

  std::cout << "seeds " << res.seeds.front() << ".." << res.seeds.back() << '\n'
            << "S=" << res.output.sum << " Cout=" << res.output.carry_out << '\n';
  return 0;
}

int cmdAnalyze(const Globals& g, const std::string& traces_path) {
  const auto traces = loadTraces(fs::path(traces_path));
  const LengthStudy study = lengthFrequencyStudy(traces);
  const fs::path out = prepareOut(g);
  for (const auto& w : study.warnings) std::cerr << "warning: " << w << '\n';

  std::ostringstream summary;
  writeSummaryCsv(summary, study.summary);
  writeText(out / "analysis_summary.csv", summary.str());
  std::ostringstream fit;
  writeFitReport(fit, study.fit);
  writeText(out / "analysis_fit.csv", fit.str());

  PlotSeries pts;
  pts.label = "per-length mean +/- sd";
  pts.markers = true;
  for (const auto& s : study.summary) {
    pts.x.push_back(s.length_cm);
    pts.y.push_back(s.mean_freq_hz);
    pts.error.push_back(s.std_freq_hz);
  }
  PlotSeries line;
  line.label = "fit";
  for (const auto& s : study.summary) {
    line.x.push_back(s.length_cm);
    line.y.push_back(study.fit.slope * s.length_cm + study.fit.intercept);
  }
  writeSvgPlot(out / "analysis.svg", {"Frequency vs tube length", "length (cm)", "frequency (Hz)"},
               {pts, line});

  std::cout << "slope " << formatReal(study.fit.slope) << " Hz/cm\n"
            << "intercept " << formatReal(study.fit.intercept) << " Hz\n"
            << "r2 " << formatReal(study.fit.r2) << (study.fit.degenerate ? " (degenerate)" : "")
            << '\n'
            << "traces used " << study.traces.size() << " of " << traces.size() << '\n';
  return 0;
}

int cmdTruthTable() {
  std::cout << "dec bits | X Y Cin | Cout S | out\n";
  for (int d = 0; d < 8; ++d) {
    const AdderInput in{(d >> 2) & 1, (d >> 1) & 1, d & 1};
    const AdderOutput o = logicalFullAdd(in);
    std::cout << "  " << d << "    " << encodeBitCount(in) << " | " << in.x << ' ' << in.y << ' '
              << in.carry_in << " | " << o.carry_out << ' ' << o.sum << " | " << o.decimal()
              << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantitative full adder on a Physarum-like particle model"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config_path, "Flat key = value configuration file")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "Base RNG seed");
  app.add_option("--out", g.out_dir, "Output directory");

  SimulateOpts sim_opts;
  auto* sim = app.add_subcommand("simulate", "Run one experiment and write flux, spectrum, plot");
  sim->fallthrough();
  auto* fraction_opt =
      sim->add_option("--fraction", sim_opts.fraction, "Arena length fraction (overrides config)");
  sim->add_option("--snapshot", sim_opts.snapshots, "Steps at which to write field snapshots");

  SweepOpts sweep_opts;
  auto* sw = app.add_subcommand("sweep", "Run seeded experiments across fractions");
  sw->fallthrough();
  sw->add_option("--fractions", sweep_opts.fractions, "Arena fractions")->delimiter(',');
  sw->add_option("--runs", sweep_opts.runs, "Runs per fraction")->check(CLI::PositiveNumber);

  int cal_runs = 10;
  auto* cal = app.add_subcommand("calibrate", "Sweep the mapped fractions and fit thresholds");
  cal->fallthrough();
  cal->add_option("--runs", cal_runs, "Runs per fraction")->check(CLI::PositiveNumber);

  AddOpts add_opts;
  auto* add = app.add_subcommand("add", "Evaluate X + Y + Cin on the simulated substrate");
  add->fallthrough();
  add->add_option("x", add_opts.x, "X bit")->required()->check(CLI::Range(0, 1));
  add->add_option("y", add_opts.y, "Y bit")->required()->check(CLI::Range(0, 1));
  add->add_option("cin", add_opts.cin, "Carry-in bit")->required()->check(CLI::Range(0, 1));
  add->add_option("--calibration", add_opts.calibration, "Calibration CSV")
      ->required()
      ->check(CLI::ExistingFile);
  add->add_option("--votes", add_opts.votes, "Runs in the majority vote")
      ->check(CLI::PositiveNumber);

  std::string traces_path;
  auto* an = app.add_subcommand("analyze", "Fit dominant frequency against tube length");
  an->fallthrough();
  an->add_option("traces", traces_path, "Trace CSV file")->required()->check(CLI::ExistingFile);

  auto* tt = app.add_subcommand("truth-table", "Print the full adder truth table");
  tt->fallthrough();

  CLI11_PARSE(app, argc, argv);
  sim_opts.has_fraction = fraction_opt->count() > 0;

  try {
    if (*sim) return cmdSimulate(g, sim_opts);
    if (*sw) return cmdSweep(g, sweep_opts);
    if (*cal) return cmdCalibrate(g, cal_runs);
    if (*add) return cmdAdd(g, add_opts);
    if (*an) return cmdAnalyze(g, traces_path);
    if (*tt) return cmdTruthTable();
  } catch (const CalibrationFailure& e) {
    std::cerr << "calibration failed: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
