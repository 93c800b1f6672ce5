#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mahler {

enum class ErrorKind {
  PoleHit,
  ZeroFunction,
  NotAnalytic,
  SingularLeadingTerm,
  PlaceMismatch,
  DimensionMismatch,
  DegenerateEquation,
  SingularMatrix,
  SingularGauge,
  NotFuchsianAtPlace,
  Resonant,
  SingularInput,
  PoleOnOrbit,
  PoleOnRay,
  DepthInsufficient,
  InSingularLocus,
  IllConditioned,
  UnmappedEigenvalue,
  SampleInSingularLocus,
  ParseError,
  ValidationError,
};

std::string_view error_name(ErrorKind kind);

/// True for errors caused by malformed or mathematically invalid input, as
/// opposed to failures of a numeric procedure on valid input.
bool is_validation_error(ErrorKind kind);

class MahlerError : public std::runtime_error {
 public:
  MahlerError(ErrorKind kind, const std::string& message,
              std::optional<long> index = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<long> index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  std::optional<long> index_;
};

/// Raised when p^k * mu == lambda for two eigenvalues of the value at 1.
class ResonantError : public MahlerError {
 public:
  ResonantError(int k, std::complex<double> lambda, std::complex<double> mu);

  int k() const noexcept { return k_; }
  std::complex<double> lambda() const noexcept { return lambda_; }
  std::complex<double> mu() const noexcept { return mu_; }

 private:
  int k_;
  std::complex<double> lambda_;
  std::complex<double> mu_;
};

}  // namespace mahler
