#pragma once

#include <stdexcept>
#include <string>

namespace arp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// malformed hierarchy or problem document
struct LoadError : Error {
  using Error::Error;
};

// simple-type mismatch between terms or sorts
struct TypeError : Error {
  using Error::Error;
};

// sort-level failure (ill-sorted application, undeclared constant, ...)
struct SortError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& msg, int line, int col)
      : Error(msg + " at " + std::to_string(line) + ":" + std::to_string(col)),
        line(line),
        col(col) {}
  int line;
  int col;
};

}  // namespace arp
