#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hmap {

/// Malformed circuit source or hardware configuration.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line_(line) {}
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}

  [[nodiscard]] std::size_t line() const { return line_; }

private:
  std::size_t line_ = 0;
};

/// The lattice cannot hold the requested atoms.
class CapacityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Neither SWAP insertion nor shuttling could make a gate executable.
class RoutingError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace hmap
