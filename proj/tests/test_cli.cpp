#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Result {
  int status = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(PHYSADDER_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("physadder_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void writeFile(const fs::path& p, const std::string& text) {
  std::ofstream os(p);
  os << text;
}

std::size_t countLines(const fs::path& p) {
  std::ifstream is(p);
  std::size_t n = 0;
  for (std::string line; std::getline(is, line);) ++n;
  return n;
}

}  // namespace

TEST_CASE("truth-table prints eight rows") {
  const Result r = run("truth-table");
  CHECK(r.status == 0);
  CHECK(r.out.find("1 0 1 | 1 0") != std::string::npos);
  CHECK(r.out.find("0 1 0 | 0 1") != std::string::npos);
  CHECK(r.out.find("1 1 1 | 1 1") != std::string::npos);
  std::istringstream is(r.out);
  int rows = 0;
  for (std::string line; std::getline(is, line);) rows += line.find(" | ") != std::string::npos ? 1 : 0;
  CHECK(rows == 9);
}

TEST_CASE("argument and input errors exit nonzero") {
  const fs::path dir = scratch("errors");
  CHECK(run("add 2 0 1 --calibration x.csv").status != 0);
  CHECK(run("frobnicate").status != 0);

  writeFile(dir / "empty.csv", "");
  CHECK(run("--out " + (dir / "o").string() + " analyze " + (dir / "empty.csv").string()).status != 0);

  std::ostringstream single;
  single << "# trace,1.5,1\n";
  for (int i = 0; i < 64; ++i) single << (i % 8 < 4 ? 1 : 0) << "\n";
  writeFile(dir / "single.csv", single.str());
  CHECK(run("--out " + (dir / "o").string() + " analyze " + (dir / "single.csv").string()).status != 0);

  CHECK(run("--out " + (dir / "o").string() + " simulate --fraction 1.5").status != 0);

  writeFile(dir / "bad.cfg", "damp = 0.9\nnot_a_key = 1\n");
  CHECK(run("--config " + (dir / "bad.cfg").string() + " --out " + (dir / "o").string() + " simulate")
            .status != 0);
}

TEST_CASE("simulate writes the expected files") {
  const fs::path dir = scratch("simulate");
  writeFile(dir / "short.cfg", "population = 800\ntotal_steps = 203\nwarmup_steps = 20\n");
  const Result r = run("--config " + (dir / "short.cfg").string() + " --seed 9 --out " +
                       (dir / "o").string() + " simulate --fraction 0.5 --snapshot 100");
  REQUIRE(r.status == 0);
  CHECK(countLines(dir / "o" / "flux.csv") == 1 + 203 / 5);
  CHECK(fs::exists(dir / "o" / "spectrum.csv"));
  CHECK(fs::exists(dir / "o" / "config_used.txt"));
  CHECK(fs::exists(dir / "o" / "flux.svg"));
  CHECK(fs::exists(dir / "o" / "field_100.pgm"));
  CHECK(fs::exists(dir / "o" / "field_100.txt"));
  CHECK(r.out.find("dominant_frequency") != std::string::npos);
  fs::remove_all(dir);
}
