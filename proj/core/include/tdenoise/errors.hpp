#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tdenoise {

/// Precondition violated by a caller-supplied argument.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An internal invariant failed (e.g. a conjugate-symmetric spectrum produced
/// a non-real inverse, or a pixel was never covered by any patch).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed file contents. `offset` is the byte position of the problem.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::uint64_t offset)
      : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::uint64_t offset_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tdenoise
