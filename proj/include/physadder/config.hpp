#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "physadder/simulation.hpp"

namespace physadder {

// Recognised configuration keys, in file order of writeConfig().
const std::vector<std::string>& configKeys();

// Sets one key. Throws ParseError(line) for an unknown key or a bad value.
void setConfigValue(RunConfig& cfg, std::string_view key, std::string_view value,
                    std::size_t line = 0);

// Flat "key = value" lines; '#' starts a comment. Keys may appear once.
// Values not present keep their current setting in `cfg`.
void readConfig(std::istream& is, RunConfig& cfg);
void readConfig(const std::filesystem::path& path, RunConfig& cfg);

void writeConfig(std::ostream& os, const RunConfig& cfg);

}  // namespace physadder
