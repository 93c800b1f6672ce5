#include "mahler/systems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mahler {

namespace {
void check_p(int p) {
  if (p < 2) throw MahlerError(ErrorKind::ValidationError, "p must be an integer >= 2, got " + std::to_string(p));
}

std::string entry_name(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}
}  // namespace

MahlerEquation::MahlerEquation(int p, std::vector<RatFun> coeffs) : p_(p), coeffs_(std::move(coeffs)) {
  check_p(p);
  if (coeffs_.size() < 2) throw MahlerError(ErrorKind::ValidationError, "equation needs order >= 1");
  if (coeffs_.front().is_zero() || coeffs_.back().is_zero()) {
    throw MahlerError(ErrorKind::DegenerateEquation, "a_0 and a_n must be nonzero");
  }
}

MahlerSystem::MahlerSystem(int p, RatMatrix a) : p_(p), a_(std::move(a)) {
  check_p(p);
  if (!a_.is_square() || a_.rows() == 0) throw MahlerError(ErrorKind::DimensionMismatch, "system matrix must be square");
  det_ = determinant(a_);
  if (det_.is_zero()) throw MahlerError(ErrorKind::SingularMatrix, "det A = 0");
}

const RatMatrix& MahlerSystem::inverse_matrix() const {
  std::call_once(cache_->once, [this] { cache_->inverse = inverse(a_); });
  return cache_->inverse;
}

MahlerSystem companion_system(const MahlerEquation& eq) {
  const auto& a = eq.coeffs();
  const std::size_t n = static_cast<std::size_t>(eq.order());
  RatMatrix m(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = RatFun(1);
  for (std::size_t j = 0; j < n; ++j) m(n - 1, j) = -(a[j] / a[n]);
  return MahlerSystem(eq.p(), std::move(m));
}

MahlerSystem kronecker(const MahlerSystem& a, const MahlerSystem& b) {
  if (a.p() != b.p()) throw MahlerError(ErrorKind::ValidationError, "tensor product needs equal p");
  return MahlerSystem(a.p(), kronecker(a.matrix(), b.matrix()));
}

MahlerSystem dual_system(const MahlerSystem& s) {
  return MahlerSystem(s.p(), inverse(s.matrix().transpose()));
}

MahlerSystem gauge_transform(const MahlerSystem& s, const RatMatrix& t) {
  if (!t.is_square() || t.rows() != s.dim()) throw MahlerError(ErrorKind::DimensionMismatch, "gauge shape");
  if (determinant(t).is_zero()) throw MahlerError(ErrorKind::SingularGauge, "det T = 0");
  RatMatrix phi_t_inv = inverse(mahler_substitute(t, s.p()));
  return MahlerSystem(s.p(), phi_t_inv * s.matrix() * t);
}

FuchsianVerdict classify_fuchsian(const MahlerSystem& s, Place place) {
  FuchsianVerdict v;
  const RatMatrix& a = s.matrix();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a(i, j).analytic_at(place)) v.pole_entries.emplace_back(i, j);
  if (!v.pole_entries.empty()) {
    v.reason = "pole at " + std::string(place_name(place)) + " in entries";
    for (auto [i, j] : v.pole_entries) v.reason += " " + entry_name(i, j);
    return v;
  }
  v.value = value_at(a, place);
  if (determinant(*v.value).is_zero()) {
    v.reason = "value matrix at " + std::string(place_name(place)) + " is singular";
    return v;
  }
  v.fuchsian = true;
  return v;
}

Certification certify_regular_singular(const MahlerSystem& s, Place place, const RatMatrix& t) {
  MahlerSystem b = gauge_transform(s, t);
  FuchsianVerdict v = classify_fuchsian(b, place);
  return Certification{v.fuchsian, std::move(b), v.reason};
}

SingularLocus singular_locus(const RatMatrix& m) {
  RatFun det = determinant(m);
  if (det.is_zero()) throw MahlerError(ErrorKind::SingularMatrix, "det M = 0");
  Poly all = det.num();
  for (const auto& f : m.data()) {
    if (!f.den().is_constant()) all = all * f.den();
  }
  SingularLocus locus;
  if (all.is_constant()) return locus;
  Poly sf = square_free_part(all);
  // Split into coprime pieces: det zeros and the rest (poles).
  Poly det_part = det.num().is_constant() ? Poly(GaussianRational(1)) : square_free_part(det.num());
  Poly pole_part = divmod(sf, gcd(sf, det_part)).first.monic();
  for (const Poly* f : {&pole_part, &det_part}) {
    if (!f->is_constant()) locus.factors.push_back(*f);
  }
  locus.points = numeric_roots(sf);
  return locus;
}

OrbitSet::OrbitSet(int p, std::vector<Complex> base, OrbitSide side) : p_(p), base_(std::move(base)), side_(side) {
  check_p(p);
  for (const auto& e : base_) {
    double a = std::abs(e);
    bool ok = side == OrbitSide::Inside ? (a > 0.0 && a < 1.0) : a > 1.0;
    if (!ok) throw MahlerError(ErrorKind::ValidationError, "orbit base point on the wrong side of the unit circle");
  }
}

OrbitSet OrbitSet::from_locus(int p, const SingularLocus& locus, OrbitSide side) {
  // Points within 1e-12 of the unit circle or of 0 belong to neither side.
  constexpr double eps = 1e-12;
  std::vector<Complex> base;
  for (const auto& s : locus.points) {
    double a = std::abs(s);
    if (side == OrbitSide::Inside ? (a > eps && a < 1.0 - eps) : a > 1.0 + eps) base.push_back(s);
  }
  return OrbitSet(p, std::move(base), side);
}

namespace {
double angle_gap(double x) {
  double r = std::remainder(x, 2.0 * std::numbers::pi);
  return std::abs(r);
}
}  // namespace

bool orbit_membership(const OrbitSet& e, const CoverPoint& z, int k_max, double tol) {
  const double logp = std::log(static_cast<double>(e.p()));
  const double logr = std::log(z.r());
  for (const auto& pt : e.base()) {
    const double loge = std::log(std::abs(pt));
    const double ratio = logr / loge;  // must equal p^j, j in Z
    if (!(ratio > 0.0)) continue;
    const long j = std::lround(std::log(ratio) / logp);
    if (std::labs(j) > k_max) continue;
    const double pj = std::pow(static_cast<double>(e.p()), static_cast<double>(j));
    if (std::abs(ratio - pj) > tol * pj) continue;
    const double arg_e = std::arg(pt);
    if (j >= 0) {
      // pi(z) = e^{p^j}
      if (angle_gap(pj * arg_e - z.b()) <= tol * std::max(1.0, pj)) return true;
    } else {
      // pi(z)^{p^{-j}} = e
      const double m = 1.0 / pj;
      if (angle_gap(m * z.b() - arg_e) <= tol * m) return true;
    }
  }
  return false;
}

}  // namespace mahler
