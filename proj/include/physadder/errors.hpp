#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace physadder {

// Argument outside an operation's domain (bad bit, out-of-range cell, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidGeometry : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// More particles requested than habitable cells.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Series or spectrum too short for the requested analysis.
class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Calibration means are not strictly ascending in bin index, so the
// physical layer did not separate the output bins.
class CalibrationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateFit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structural problem with an input file (missing header, empty file).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace physadder
