#include "mahler/cover.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace mahler {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CMatrix identity(std::size_t n) {
  return CMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

CMatrix eval_or(const RatMatrix& m, Complex z, ErrorKind kind, int j) {
  try {
    return evaluate(m, z);
  } catch (const MahlerError& e) {
    if (e.kind() != ErrorKind::PoleHit) throw;
    throw MahlerError(kind, "singular point at step " + std::to_string(j), j);
  }
}

int choose_depth(double t0_abs, double rho, const EvalOptions& opt, const std::function<double(int)>& t_at) {
  if (opt.depth >= 0) {
    if (opt.depth > opt.depth_cap) throw MahlerError(ErrorKind::DepthInsufficient, "depth exceeds the cap");
    if (t_at(opt.depth) > rho) {
      throw MahlerError(ErrorKind::DepthInsufficient,
                        "depth " + std::to_string(opt.depth) + " does not reach the trust radius");
    }
    return opt.depth;
  }
  (void)t0_abs;
  for (int k = 0; k <= opt.depth_cap; ++k) {
    if (t_at(k) <= rho) return k;
  }
  throw MahlerError(ErrorKind::DepthInsufficient, "trust radius not reached within the depth cap");
}

// Shared continuation at 0 and infinity; w = local variable z or 1/z.
EvalResult eval_zero_like(const MahlerSystem& s, const LocalReduction& l, Complex z, const EvalOptions& opt,
                          bool at_inf) {
  const double az = std::abs(z);
  if (at_inf ? !(az > 1.0) : !(az > 0.0 && az < 1.0)) {
    throw MahlerError(ErrorKind::ValidationError, at_inf ? "eval_Finf needs |z| > 1" : "eval_F0 needs 0 < |z| < 1");
  }
  const int p = s.p();
  const double rho = trust_radius(l);
  const double aw = at_inf ? 1.0 / az : az;
  // |w|^{p^{k+1}} computed in logs to avoid underflow issues
  auto t_at = [&](int k) { return std::exp(std::log(aw) * std::pow(static_cast<double>(p), k + 1)); };
  const int k = choose_depth(aw, rho, opt, t_at);

  const RatMatrix& ainv = s.inverse_matrix();
  const CMatrix a_const = to_complex(l.a_const);
  CMatrix prod = identity(s.dim());
  CMatrix a_pow = a_const;  // A_const^{j+1}
  Complex zj = z;           // z^{p^j}
  CMatrix value;
  CMatrix next;
  for (int j = 0; j <= k + 1; ++j) {
    prod = prod * eval_or(ainv, zj, ErrorKind::PoleOnOrbit, j);
    zj = std::pow(zj, p);
    Complex t = at_inf ? 1.0 / zj : zj;
    CMatrix v = prod * l.f_hat.evaluate(t) * a_pow;
    if (j == k) value = v;
    if (j == k + 1) next = v;
    a_pow = a_pow * a_const;
  }
  return {value, norm1(next - value), k};
}

}  // namespace

double trust_radius(const LocalReduction& l) {
  if (l.radius_estimate) return *l.radius_estimate / 2.0;
  const int n = l.f_hat.order();
  if (n == 0) return 0.0;
  double c = 0.0;
  for (int k = (n + 1) / 2; k <= n; ++k) c = std::max(c, norm1(l.f_hat.numeric_coeff(k)));
  if (c == 0.0) return kInf;
  return std::pow(1e-16 / c, 1.0 / n);
}

EvalResult eval_F0(const MahlerSystem& s, const LocalReduction& l0, Complex z, const EvalOptions& opt) {
  if (l0.place != Place::Zero) throw MahlerError(ErrorKind::PlaceMismatch, "eval_F0 needs the reduction at 0");
  return eval_zero_like(s, l0, z, opt, false);
}

EvalResult eval_Finf(const MahlerSystem& s, const LocalReduction& linf, Complex z, const EvalOptions& opt) {
  if (linf.place != Place::Infinity) throw MahlerError(ErrorKind::PlaceMismatch, "eval_Finf needs the reduction at infinity");
  return eval_zero_like(s, linf, z, opt, true);
}

EvalResult eval_F1(const MahlerSystem& s, const LocalReduction& l1, const CoverPoint& z, const EvalOptions& opt) {
  if (l1.place != Place::One) throw MahlerError(ErrorKind::PlaceMismatch, "eval_F1 needs the reduction at 1");
  const int p = s.p();
  const Complex u = z.log();
  const double rho = trust_radius(l1);
  auto t_at = [&](int k) { return std::abs(u) / std::pow(static_cast<double>(p), k); };
  const int k = choose_depth(std::abs(u), rho, opt, t_at);

  const CMatrix c0_inv = to_complex(l1.a_const).inverse();
  CMatrix prod = identity(s.dim());
  CMatrix c_pow = identity(s.dim());  // C_0^{-j}
  CMatrix value;
  CMatrix next;
  Complex uj = u;
  for (int j = 0; j <= k + 1; ++j) {
    if (j > 0) {
      uj /= static_cast<double>(p);
      prod = prod * eval_or(s.matrix(), std::exp(uj), ErrorKind::PoleOnRay, j);
      c_pow = c_pow * c0_inv;
    }
    CMatrix v = prod * l1.f_hat.evaluate(uj) * c_pow;
    if (j == k) value = v;
    if (j == k + 1) next = v;
  }
  return {value, norm1(next - value), k};
}

ConnectionBundle make_bundle(const MahlerSystem& s, const BundleOptions& opt) {
  LocalReduction l0 = reduce_at_0(s, opt.order, opt.reduction);
  LocalReduction l1 = reduce_at_1(s, opt.order, opt.reduction);
  LocalReduction linf = reduce_at_inf(s, opt.order, opt.reduction);
  SingularLocus locus = singular_locus(s.matrix());
  CMatrix a0 = to_complex(l0.a_const), a1 = to_complex(l1.a_const), ainf = to_complex(linf.a_const);
  return ConnectionBundle{s,
                          std::move(l0),
                          std::move(l1),
                          std::move(linf),
                          std::move(a0),
                          std::move(a1),
                          std::move(ainf),
                          OrbitSet::from_locus(s.p(), locus, OrbitSide::Inside),
                          OrbitSet::from_locus(s.p(), locus, OrbitSide::Outside),
                          opt.eval};
}

namespace {
EvalResult connection(const ConnectionBundle& b, const CoverPoint& z, bool at_inf, bool screen = true) {
  if (at_inf ? !z.in_sigma_inf() : !z.in_sigma0()) {
    throw MahlerError(ErrorKind::ValidationError, at_inf ? "point is not in Sigma_inf" : "point is not in Sigma_0");
  }
  if (screen && orbit_membership(at_inf ? b.einf : b.e0, z)) {
    throw MahlerError(ErrorKind::InSingularLocus, "point lies on a singular orbit");
  }
  EvalResult f1 = eval_F1(b.system, b.l1, z, b.eval);
  EvalResult f = at_inf ? eval_Finf(b.system, b.linf, z.project(), b.eval) : eval_F0(b.system, b.l0, z.project(), b.eval);
  Eigen::FullPivLU<CMatrix> lu(f1.value);
  if (!lu.isInvertible()) throw MahlerError(ErrorKind::InSingularLocus, "F1 is not invertible at the point");
  CMatrix f1_inv = lu.inverse();
  CMatrix m = f1_inv * f.value;
  // first-order propagation of both estimates
  double err = norm1(f1_inv) * (f.error_estimate + f1.error_estimate * norm1(m));
  return {m, err, std::max(f.depth, f1.depth)};
}
}  // namespace

EvalResult connection_M0(const ConnectionBundle& b, const CoverPoint& z) { return connection(b, z, false); }

EvalResult connection_Minf(const ConnectionBundle& b, const CoverPoint& z) { return connection(b, z, true); }

double verify_connection_equation(const ConnectionBundle& b, const CoverPoint& z, Place which) {
  if (which == Place::One) throw MahlerError(ErrorKind::PlaceMismatch, "connection equations live at 0 and infinity");
  const bool at_inf = which == Place::Infinity;
  // orbit screening is skipped here: forward images such as e^p of an orbit
  // point are often still evaluable, and evaluation errors propagate anyway
  CMatrix m = connection(b, z, at_inf, false).value;
  CMatrix m_phi = connection(b, z.phi(b.p()), at_inf, false).value;
  const CMatrix& side = at_inf ? b.ainf : b.a0;
  return norm1(m_phi - b.a1 * m * side.inverse()) / norm1(m);
}

}  // namespace mahler
