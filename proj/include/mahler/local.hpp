#pragma once

#include <optional>

#include "mahler/series.hpp"
#include "mahler/systems.hpp"

namespace mahler {

struct ReductionOptions {
  /// Run the recursion over Q(i); otherwise in double precision from the
  /// exact expansion of A.
  bool exact = true;
  /// Relative tolerance of the resonance test at 1.
  double tol_res = 1e-9;
};

/// Local gauge F (constant term I) with A F = phi_p(F) A_const at 0 or
/// infinity, resp. B(u) G(u) = G(p u) C_0 at 1 with B(u) = A(e^u).
struct LocalReduction {
  Place place;
  int p;
  QMatrix a_const;
  SeriesMatrix f_hat;
  std::optional<double> radius_estimate;
};

LocalReduction reduce_at_0(const MahlerSystem& s, int order, const ReductionOptions& opt = {});
LocalReduction reduce_at_inf(const MahlerSystem& s, int order, const ReductionOptions& opt = {});
/// Throws ResonantError when lambda = p^k mu for eigenvalues of A(1) and
/// some 1 <= k <= order.
LocalReduction reduce_at_1(const MahlerSystem& s, int order, const ReductionOptions& opt = {});
LocalReduction reduce_at(const MahlerSystem& s, Place place, int order, const ReductionOptions& opt = {});

struct Residual {
  /// Set only when every coefficient of the truncated defining equation
  /// vanishes in exact arithmetic.
  bool exact_zero = false;
  double value = 0.0;
};

/// Coefficientwise residual of the defining equation, truncated to the order
/// of f_hat.
Residual residual(const MahlerSystem& s, const LocalReduction& l);

/// Pointwise residual of the defining equation with the truncated series,
/// t being the local variable (z, u, or 1/z). Relative to ||F(t)||.
double residual_at(const MahlerSystem& s, const LocalReduction& l, Complex t);

/// Smallest positive root of 1 = b (sum_{j>=1} a_j r^j + a_0 r / (1 - r)),
/// a_j = ||A_j||_1 and b = ||A_0^{-1}||_1, for the local expansion of a at
/// the place (0 or infinity).
double majorant_radius(const RatMatrix& a, Place place, int terms = 256);

}  // namespace mahler
