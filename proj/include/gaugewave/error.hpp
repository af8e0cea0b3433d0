#pragma once

#include <stdexcept>
#include <string>

namespace gaugewave {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input violates a documented precondition (axis range, splitting, grid mismatch, ...).
struct PreconditionError : Error {
  using Error::Error;
};

struct CflError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  ConfigError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line(line) {}
  int line;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace gaugewave
