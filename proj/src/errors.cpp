#include "cassini/errors.hpp"

namespace cassini {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NonPositiveFrequency: return "NonPositiveFrequency";
    case ErrorKind::SingularFit: return "SingularFit";
    case ErrorKind::CriticalModePresent: return "CriticalModePresent";
    case ErrorKind::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorKind::CertificateMissing: return "CertificateMissing";
    case ErrorKind::EpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::optional<std::size_t> index)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      index_(index) {}

bool Error::is_input_error() const noexcept {
  switch (kind_) {
    case ErrorKind::InvalidInput:
    case ErrorKind::NotPositiveDefinite:
    case ErrorKind::NonPositiveFrequency:
    case ErrorKind::Io:
    case ErrorKind::EpsilonTooLarge:
      return true;
    default:
      return false;
  }
}

}  // namespace cassini
