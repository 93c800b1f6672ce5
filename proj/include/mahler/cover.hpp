#pragma once

#include "mahler/cover_point.hpp"
#include "mahler/local.hpp"
#include "mahler/systems.hpp"

namespace mahler {

struct EvalOptions {
  /// Continuation depth k; negative selects the smallest k reaching the
  /// trust radius.
  int depth = -1;
  int depth_cap = 64;
};

struct EvalResult {
  CMatrix value;
  /// Norm of the difference between depth k and depth k + 1.
  double error_estimate = 0.0;
  int depth = 0;
};

/// Radius in the local variable inside which the truncated series is used:
/// radius_estimate / 2 when known, otherwise (1e-16 / c)^{1/N} with c the
/// largest coefficient norm in the upper half of the series (infinite when
/// that half vanishes).
double trust_radius(const LocalReduction& l);

/// F(z) = A^{-1}(z) ... A^{-1}(z^{p^k}) F(z^{p^{k+1}}) A_0^{k+1}, 0 < |z| < 1.
/// Throws PoleOnOrbit(j), DepthInsufficient.
EvalResult eval_F0(const MahlerSystem& s, const LocalReduction& l0, Complex z, const EvalOptions& opt = {});
/// Same product with the series in 1/z, |z| > 1.
EvalResult eval_Finf(const MahlerSystem& s, const LocalReduction& linf, Complex z, const EvalOptions& opt = {});
/// G(u) = B(u/p) ... B(u/p^k) G(u/p^k) C_0^{-k} at u = log of the cover point.
/// Throws PoleOnRay(j), DepthInsufficient.
EvalResult eval_F1(const MahlerSystem& s, const LocalReduction& l1, const CoverPoint& z, const EvalOptions& opt = {});

struct BundleOptions {
  int order = 32;
  EvalOptions eval;
  ReductionOptions reduction;
};

/// (A0, A1, Ainf, M0, Minf) built from the three local reductions of a
/// system Fuchsian at 0, 1 and infinity. Members are public so that tests
/// can perturb them.
struct ConnectionBundle {
  MahlerSystem system;
  LocalReduction l0, l1, linf;
  CMatrix a0, a1, ainf;
  OrbitSet e0, einf;
  EvalOptions eval;

  int p() const { return system.p(); }
  std::size_t dim() const { return system.dim(); }
};

ConnectionBundle make_bundle(const MahlerSystem& s, const BundleOptions& opt = {});

/// F1(z)^{-1} F0(pi z) for z in Sigma_0 off the orbit set; throws
/// ValidationError outside Sigma_0 and InSingularLocus on the orbits.
EvalResult connection_M0(const ConnectionBundle& b, const CoverPoint& z);
EvalResult connection_Minf(const ConnectionBundle& b, const CoverPoint& z);

/// ||M(phi z) - A1 M(z) A_side^{-1}|| / ||M(z)|| for side 0 or infinity.
double verify_connection_equation(const ConnectionBundle& b, const CoverPoint& z, Place which);

}  // namespace mahler
