#pragma once

#include <stdexcept>
#include <string>

namespace latdiam {

/// Caller supplied something malformed (bad dimensions, out-of-range index,
/// unparsable file). The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An invariant that the mathematics guarantees did not hold. Carries a
/// diagnostic dump describing the offending instance. CLI exit code 3.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what, std::string dump = {})
      : std::logic_error(what), dump_(std::move(dump)) {}

  [[nodiscard]] const std::string& dump() const { return dump_; }

 private:
  std::string dump_;
};

}  // namespace latdiam
