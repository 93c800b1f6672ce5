#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "mahler/cover_point.hpp"
#include "mahler/exact.hpp"

namespace mahler {

/// a_n f(z^{p^n}) + ... + a_0 f(z) = 0.
class MahlerEquation {
 public:
  /// coeffs = a_0, ..., a_n with n >= 1. Throws ValidationError for p < 2,
  /// DegenerateEquation when a_0 a_n = 0.
  MahlerEquation(int p, std::vector<RatFun> coeffs);

  int p() const { return p_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<RatFun>& coeffs() const { return coeffs_; }

 private:
  int p_;
  std::vector<RatFun> coeffs_;
};

/// phi_p(Y) = A Y with A square and det A != 0.
class MahlerSystem {
 public:
  /// Throws ValidationError (p < 2), DimensionMismatch (non-square),
  /// SingularMatrix (det A = 0).
  MahlerSystem(int p, RatMatrix a);

  int p() const { return p_; }
  std::size_t dim() const { return a_.rows(); }
  const RatMatrix& matrix() const { return a_; }
  const RatFun& det() const { return det_; }
  /// Exact A^{-1}, computed on first use (thread-safe).
  const RatMatrix& inverse_matrix() const;

  friend bool operator==(const MahlerSystem& x, const MahlerSystem& y) { return x.p_ == y.p_ && x.a_ == y.a_; }

 private:
  int p_;
  RatMatrix a_;
  RatFun det_;
  struct Cache {
    std::once_flag once;
    RatMatrix inverse;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

MahlerSystem companion_system(const MahlerEquation& eq);
/// Tensor product of two systems with the same p.
MahlerSystem kronecker(const MahlerSystem& a, const MahlerSystem& b);
/// Matrix (A^T)^{-1}.
MahlerSystem dual_system(const MahlerSystem& s);
/// phi_p(T)^{-1} A T; throws SingularGauge if det T = 0.
MahlerSystem gauge_transform(const MahlerSystem& s, const RatMatrix& t);

struct FuchsianVerdict {
  bool fuchsian = false;
  std::string reason;
  /// Entries with a pole at the place.
  std::vector<std::pair<std::size_t, std::size_t>> pole_entries;
  /// Value matrix, present whenever every entry is analytic.
  std::optional<QMatrix> value;
};

FuchsianVerdict classify_fuchsian(const MahlerSystem& s, Place place);

struct Certification {
  bool certified = false;
  MahlerSystem gauged;
  std::string reason;
};

/// Applies the gauge and checks Fuchsianity of the result at the place.
Certification certify_regular_singular(const MahlerSystem& s, Place place, const RatMatrix& t);

struct SingularLocus {
  /// Square-free, nonconstant, pairwise coprime.
  std::vector<Poly> factors;
  /// Numeric roots of the factors.
  std::vector<Complex> points;

  bool empty() const { return factors.empty(); }
};

/// Poles of the entries together with zeros of det m. Throws SingularMatrix
/// if det m = 0.
SingularLocus singular_locus(const RatMatrix& m);

enum class OrbitSide { Inside, Outside };

/// Finite base E of the orbit set E^{p^Z}; never materialized.
class OrbitSet {
 public:
  /// Throws ValidationError when a point is on the wrong side of the unit
  /// circle (or zero).
  OrbitSet(int p, std::vector<Complex> base, OrbitSide side);

  /// Points of the singular locus lying strictly on the given side.
  static OrbitSet from_locus(int p, const SingularLocus& locus, OrbitSide side);

  int p() const { return p_; }
  const std::vector<Complex>& base() const { return base_; }
  OrbitSide side() const { return side_; }

 private:
  int p_;
  std::vector<Complex> base_;
  OrbitSide side_;
};

constexpr double kOrbitTolerance = 1e-9;
constexpr int kDefaultOrbitDepth = 32;

/// True iff pi(z) = e^{p^j} or pi(z)^{p^j} = e for some e in the base and
/// 0 <= j <= k_max. Argument lifts on the cover are not distinguished.
bool orbit_membership(const OrbitSet& e, const CoverPoint& z, int k_max = kDefaultOrbitDepth,
                      double tol = kOrbitTolerance);

}  // namespace mahler
