#pragma once

#include <stdexcept>
#include <string>

namespace logvoa {

/// A coefficient was requested outside the window on which it is
/// guaranteed exact, or an operation would need truncated data.
struct WindowExceeded : std::runtime_error {
  explicit WindowExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Two series whose exponent offsets differ by a non-integer cannot be
/// combined into a single series.
struct IncompatibleOffset : std::invalid_argument {
  explicit IncompatibleOffset(const std::string& what) : std::invalid_argument(what) {}
};

/// Depth lowering applied to a depth-0 operator.
struct NothingToLower : std::logic_error {
  explicit NothingToLower(const std::string& what) : std::logic_error(what) {}
};

/// Parameters for which the requested claim is vacuous (e.g. the mock
/// operator growth statement needs a nonzero eigenvalue product).
struct DegenerateParameters : std::invalid_argument {
  explicit DegenerateParameters(const std::string& what) : std::invalid_argument(what) {}
};

/// Structurally invalid input to an operation (mixed legs, bad index, ...).
struct MalformedInput : std::invalid_argument {
  explicit MalformedInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Configuration file / key parse failure. Carries enough context for a
/// useful diagnostic (file line and the offending key when known).
struct ConfigError : std::runtime_error {
  int line = 0;
  std::string key;
  ConfigError(const std::string& what, int line_ = 0, std::string key_ = {})
      : std::runtime_error(what), line(line_), key(std::move(key_)) {}
};

}  // namespace logvoa
