#include "physadder/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <set>

#include "physadder/csv.hpp"
#include "physadder/errors.hpp"

namespace physadder {

namespace {

int parseInt(std::string_view text, std::size_t line) {
  const std::string t = trim(text);
  int v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ParseError(line, "not an integer: '" + t + "'");
  }
  return v;
}

struct Field {
  std::function<void(RunConfig&, std::string_view, std::size_t)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <typename Member>
Field realField(Member member) {
  return {[member](RunConfig& c, std::string_view v, std::size_t l) {
            member(c) = parseReal(v, l);
          },
          [member](const RunConfig& c) { return formatReal(member(c)); }};
}

template <typename Member>
Field intField(Member member) {
  return {[member](RunConfig& c, std::string_view v, std::size_t l) {
            member(c) = parseInt(v, l);
          },
          [member](const RunConfig& c) {
            return std::to_string(member(c));
          }};
}

const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> table = {
      {"lattice_width", intField([](auto& c) -> auto& { return c.geometry.lattice_width; })},
      {"lattice_height", intField([](auto& c) -> auto& { return c.geometry.lattice_height; })},
      {"habitable_x", intField([](auto& c) -> auto& { return c.geometry.habitable.x; })},
      {"habitable_y", intField([](auto& c) -> auto& { return c.geometry.habitable.y; })},
      {"habitable_width",
       intField([](auto& c) -> auto& { return c.geometry.habitable.width; })},
      {"habitable_height",
       intField([](auto& c) -> auto& { return c.geometry.habitable.height; })},
      {"fraction", realField([](auto& c) -> auto& { return c.geometry.fraction; })},
      {"sensor_angle", realField([](auto& c) -> auto& { return c.params.sensor_angle; })},
      {"rotation_angle",
       realField([](auto& c) -> auto& { return c.params.rotation_angle; })},
      {"sensor_offset", realField([](auto& c) -> auto& { return c.params.sensor_offset; })},
      {"deposit", realField([](auto& c) -> auto& { return c.params.deposit; })},
      {"damp", realField([](auto& c) -> auto& { return c.params.damp; })},
      {"sample_interval", intField([](auto& c) -> auto& { return c.params.sample_interval; })},
      {"population", intField([](auto& c) -> auto& { return c.params.population; })},
      {"total_steps", intField([](auto& c) -> auto& { return c.total_steps; })},
      {"warmup_steps", intField([](auto& c) -> auto& { return c.warmup_steps; })},
      {"constraint_step", intField([](auto& c) -> auto& { return c.constraint_step; })},
  };
  return table;
}

const Field* findField(std::string_view key) {
  for (const auto& [name, f] : fields()) {
    if (name == key) return &f;
  }
  return nullptr;
}

}  // namespace

const std::vector<std::string>& configKeys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, f] : fields()) k.push_back(name);
    return k;
  }();
  return keys;
}

void setConfigValue(RunConfig& cfg, std::string_view key, std::string_view value,
                    std::size_t line) {
  const Field* f = findField(key);
  if (!f) throw ParseError(line, "unknown configuration key '" + std::string(key) + "'");
  f->set(cfg, value, line);
}

void readConfig(std::istream& is, RunConfig& cfg) {
  std::string raw;
  std::size_t lineno = 0;
  std::set<std::string> seen;
  while (std::getline(is, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (!seen.insert(key).second) throw ParseError(lineno, "duplicate key '" + key + "'");
    setConfigValue(cfg, key, value, lineno);
  }
}

void readConfig(const std::filesystem::path& path, RunConfig& cfg) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path.string());
  readConfig(is, cfg);
}

void writeConfig(std::ostream& os, const RunConfig& cfg) {
  for (const auto& [name, f] : fields()) os << name << " = " << f.get(cfg) << '\n';
}

}  // namespace physadder
