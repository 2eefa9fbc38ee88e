#include "ratlab/error.hpp"

namespace ratlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::StraddlesThreshold: return "StraddlesThreshold";
    case ErrorKind::IndexBeyondCertified: return "IndexBeyondCertified";
    case ErrorKind::IntegerYBoundary: return "IntegerYBoundary";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::NotReduced: return "NotReduced";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::NoReturnWithinCap: return "NoReturnWithinCap";
    case ErrorKind::NoIntersectingDiscWithinCap: return "NoIntersectingDiscWithinCap";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, std::string message, std::optional<std::size_t> step)
    : std::runtime_error(std::move(message)), kind_(kind), step_(step) {}

}  // namespace ratlab
