#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace certisqrt {

enum class ErrorKind {
  Domain,
  Usage,
  RangeOverflow,
  DivisionByZero,
  MantissaRange,
  ExponentRange,
  ResourceLimit,
  SeedContract,
  IterationBudget,
  EpsTooSmall,
  NoFeasibleEps,
  InternalInvariant,
  Parse,
};

std::string_view error_kind_name(ErrorKind kind);

/// Every failure raised by the library. The kind is what callers branch on;
/// the message names the offending value.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace certisqrt
