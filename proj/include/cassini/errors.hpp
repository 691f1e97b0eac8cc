#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cassini {

enum class ErrorKind {
  InvalidInput,
  NotPositiveDefinite,
  NoConvergence,
  NonPositiveFrequency,
  SingularFit,
  CriticalModePresent,
  ResolutionTooCoarse,
  CertificateMissing,
  EpsilonTooLarge,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Exception type thrown by every library routine.
///
/// `index()` carries the offending pivot, mode or matrix row when the failure
/// is tied to one.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> index = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

  /// True for failures caused by the caller's data (bad files, indefinite
  /// matrices) rather than by the numerics.
  bool is_input_error() const noexcept;

 private:
  ErrorKind kind_;
  std::optional<std::size_t> index_;
};

}  // namespace cassini
