#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctqw {

// graph construction violated an invariant (asymmetry, self-loop, too few nodes)
class InvalidGraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// entanglement entropy requested for a state dimension that is not a power of two
class UnsupportedDimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// a deviation-matrix diagonal left the affine population embedding
class CorruptedStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// a unitary was requested for a sequence containing a gradient crush
class NonUnitarySequenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ctqw

namespace ctqw::pulse {

// syntax error carrying the byte offset into the input and the token set
// that would have been accepted there
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& detail)
      : std::runtime_error(compose(offset, expected, detail)),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  static std::string compose(std::size_t offset, const std::vector<std::string>& expected,
                             const std::string& detail) {
    std::string msg = "syntax error at offset " + std::to_string(offset) + ": " + detail;
    if (!expected.empty()) {
      msg += " (expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) msg += ", ";
        msg += expected[i];
      }
      msg += ")";
    }
    return msg;
  }

  std::size_t offset_;
  std::vector<std::string> expected_;
};

// evaluation failure: unbound parameter, division by zero, non-finite result
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ctqw::pulse
