#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ratlab {

enum class ErrorKind {
  PrecisionExhausted,
  StraddlesThreshold,
  IndexBeyondCertified,
  IntegerYBoundary,
  DomainViolation,
  NotReduced,
  InsufficientSamples,
  NoReturnWithinCap,
  NoIntersectingDiscWithinCap,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

// Every failure of a certified operation is reported through this type. `step`
// carries the orbit/expansion index at which certification broke down, when
// there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message,
        std::optional<std::size_t> step = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> step() const noexcept { return step_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> step_;
};

}  // namespace ratlab
