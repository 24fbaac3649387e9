#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace physadder {

// Shortest decimal text that round-trips to the same double.
std::string formatReal(double v);

// Parses a full field as a double; throws ParseError(line) otherwise.
double parseReal(std::string_view text, std::size_t line);

std::string trim(std::string_view s);

std::vector<std::string> splitCsv(std::string_view line);

}  // namespace physadder
