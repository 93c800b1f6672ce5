#include "mahler/error.hpp"

#include <sstream>

namespace mahler {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::ZeroFunction: return "ZeroFunction";
    case ErrorKind::NotAnalytic: return "NotAnalytic";
    case ErrorKind::SingularLeadingTerm: return "SingularLeadingTerm";
    case ErrorKind::PlaceMismatch: return "PlaceMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DegenerateEquation: return "DegenerateEquation";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::SingularGauge: return "SingularGauge";
    case ErrorKind::NotFuchsianAtPlace: return "NotFuchsianAtPlace";
    case ErrorKind::Resonant: return "Resonant";
    case ErrorKind::SingularInput: return "SingularInput";
    case ErrorKind::PoleOnOrbit: return "PoleOnOrbit";
    case ErrorKind::PoleOnRay: return "PoleOnRay";
    case ErrorKind::DepthInsufficient: return "DepthInsufficient";
    case ErrorKind::InSingularLocus: return "InSingularLocus";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::UnmappedEigenvalue: return "UnmappedEigenvalue";
    case ErrorKind::SampleInSingularLocus: return "SampleInSingularLocus";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

bool is_validation_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroFunction:
    case ErrorKind::NotAnalytic:
    case ErrorKind::PlaceMismatch:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::DegenerateEquation:
    case ErrorKind::SingularMatrix:
    case ErrorKind::SingularGauge:
    case ErrorKind::NotFuchsianAtPlace:
    case ErrorKind::SingularInput:
    case ErrorKind::ParseError:
    case ErrorKind::ValidationError:
      return true;
    default:
      return false;
  }
}

MahlerError::MahlerError(ErrorKind kind, const std::string& message,
                         std::optional<long> index)
    : std::runtime_error(std::string(error_name(kind)) + ": " + message),
      kind_(kind),
      index_(index) {}

namespace {
std::string resonant_message(int k, std::complex<double> lambda,
                             std::complex<double> mu) {
  std::ostringstream os;
  os << "eigenvalues " << lambda << " and " << mu << " satisfy lambda = p^" << k
     << " * mu";
  return os.str();
}
}  // namespace

ResonantError::ResonantError(int k, std::complex<double> lambda,
                             std::complex<double> mu)
    : MahlerError(ErrorKind::Resonant, resonant_message(k, lambda, mu), k),
      k_(k),
      lambda_(lambda),
      mu_(mu) {}

}  // namespace mahler
