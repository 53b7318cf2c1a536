#pragma once

#include <stdexcept>
#include <string>

namespace haconvdr {

// Error taxonomy mapped to process exit codes by the CLI:
//   ValidationError / ConfigError -> 1
//   MissingArtifactError          -> 2
//   NumericalError                -> 3
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : Error {
  using Error::Error;
};

struct ParseError : ValidationError {
  ParseError(const std::string& file, std::size_t line, const std::string& what)
      : ValidationError(file + ":" + std::to_string(line) + ": " + what),
        line_number(line) {}
  std::size_t line_number;
};

struct ConfigError : Error {
  using Error::Error;
};

struct MissingArtifactError : Error {
  using Error::Error;
};

struct NumericalError : Error {
  using Error::Error;
};

}  // namespace haconvdr
