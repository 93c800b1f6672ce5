#include "mahler/local.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mahler {
namespace {

QMatrix zero_like(const QMatrix& m) { return QMatrix(m.rows(), m.cols()); }
CMatrix zero_like(const CMatrix& m) { return CMatrix::Zero(m.rows(), m.cols()); }
QMatrix invert(const QMatrix& m) { return inverse(m); }
CMatrix invert(const CMatrix& m) { return m.inverse(); }

// F_0 = I; F_k = A_0^{-1}([p | k] F_{k/p} A_0 - sum_{j=1}^k A_j F_{k-j}).
template <class Mat>
std::vector<Mat> recursion_at_0(const std::vector<Mat>& a, int p, int order) {
  const Mat a0_inv = invert(a[0]);
  Mat id = zero_like(a[0]);
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(a[0].rows()); ++i) id(i, i) = 1;
  std::vector<Mat> f{id};
  for (int k = 1; k <= order; ++k) {
    Mat acc = zero_like(a[0]);
    for (int j = 1; j <= k; ++j) acc += a[static_cast<std::size_t>(j)] * f[static_cast<std::size_t>(k - j)];
    Mat rhs = -acc;
    if (k % p == 0) rhs += f[static_cast<std::size_t>(k / p)] * a[0];
    f.push_back(a0_inv * rhs);
  }
  return f;
}

// Column-major vec: vec(X C) = (C^T (x) I) vec X, vec(C X) = (I (x) C) vec X.
std::vector<GaussianRational> vec(const QMatrix& m) {
  std::vector<GaussianRational> out;
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(m(r, c));
  return out;
}

QMatrix unvec(const std::vector<GaussianRational>& v, std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) m(r, c) = v[c * n + r];
  return m;
}

void check_resonance(const QMatrix& c0, int p, int order, double tol) {
  Eigen::ComplexEigenSolver<CMatrix> es(to_complex(c0), false);
  const auto ev = es.eigenvalues();
  double p_k = 1.0;
  for (int k = 1; k <= order; ++k) {
    p_k *= p;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
      for (Eigen::Index j = 0; j < ev.size(); ++j) {
        Complex lambda = ev(i), mu = ev(j);
        double scale = std::max(std::abs(lambda), p_k * std::abs(mu));
        if (std::abs(lambda - p_k * mu) <= tol * scale) throw ResonantError(k, lambda, mu);
      }
  }
}

// Pair (lambda, mu) with |lambda / mu - p^k| smallest; used when the exact
// solve fails below the numeric tolerance.
[[noreturn]] void throw_closest_resonance(const QMatrix& c0, int p, int k) {
  Eigen::ComplexEigenSolver<CMatrix> es(to_complex(c0), false);
  const auto ev = es.eigenvalues();
  const double p_k = std::pow(static_cast<double>(p), k);
  Complex best_l = ev(0), best_m = ev(0);
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    for (Eigen::Index j = 0; j < ev.size(); ++j) {
      double d = std::abs(ev(i) - p_k * ev(j));
      if (d < best) best = d, best_l = ev(i), best_m = ev(j);
    }
  throw ResonantError(k, best_l, best_m);
}

void require_fuchsian(const MahlerSystem& s, Place place) {
  FuchsianVerdict v = classify_fuchsian(s, place);
  if (!v.fuchsian) throw MahlerError(ErrorKind::NotFuchsianAtPlace, v.reason);
}

LocalReduction reduce_zero_like(const MahlerSystem& s, const RatMatrix& a, Place place, int order,
                                const ReductionOptions& opt) {
  if (order < 0) throw MahlerError(ErrorKind::ValidationError, "negative order");
  require_fuchsian(s, place);
  SeriesMatrix ax = expand_at(s.matrix(), place, order);
  const auto& ac = ax.exact_coeffs();
  std::optional<double> radius = majorant_radius(a, Place::Zero, std::max(order, 256));
  if (opt.exact) {
    return {place, s.p(), ac[0], SeriesMatrix(place, recursion_at_0(ac, s.p(), order)), radius};
  }
  return {place, s.p(), ac[0], SeriesMatrix(place, recursion_at_0(ax.numeric_coeffs(), s.p(), order)), radius};
}

}  // namespace

double majorant_radius(const RatMatrix& a, Place place, int terms) {
  const RatMatrix local = place == Place::Infinity ? at_inverse_variable(a) : a;
  if (place == Place::One) throw MahlerError(ErrorKind::PlaceMismatch, "majorant radius is defined at 0 and infinity");
  std::vector<CMatrix> coeffs(static_cast<std::size_t>(terms) + 1, CMatrix::Zero(a.rows(), a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      auto t = numeric_taylor(local(i, j), Place::Zero, terms);
      for (int k = 0; k <= terms; ++k) coeffs[static_cast<std::size_t>(k)](i, j) = t[static_cast<std::size_t>(k)];
    }
  std::vector<double> norms;
  for (const auto& c : coeffs) norms.push_back(norm1(c));
  if (std::all_of(norms.begin() + 1, norms.end(), [](double x) { return x == 0.0; })) {
    return std::numeric_limits<double>::infinity();  // constant A, F = I
  }
  const double a0 = norms[0];
  const double b = norm1(coeffs[0].inverse());
  // h(r) = b (sum a_j r^j + a0 r/(1-r)); infinite if the truncated tail has
  // not decayed, i.e. r is at or beyond the radius of A itself.
  auto h = [&](double r) -> double {
    double sum = 0.0, term = 0.0, pw = 1.0;
    for (int k = 1; k <= terms; ++k) {
      pw *= r;
      term = norms[static_cast<std::size_t>(k)] * pw;
      sum += term;
    }
    if (term > 1e-12 * std::max(sum, 1.0)) return std::numeric_limits<double>::infinity();
    return b * (sum + a0 * r / (1.0 - r));
  };
  // h(r) >= a0 b r/(1-r) >= r/(1-r), so the root lies below 1/2.
  double lo = 0.0, hi = 1.0 / (1.0 + a0 * b);
  if (h(hi) < 1.0) return hi;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (h(mid) < 1.0 ? lo : hi) = mid;
  }
  return lo;
}

LocalReduction reduce_at_0(const MahlerSystem& s, int order, const ReductionOptions& opt) {
  return reduce_zero_like(s, s.matrix(), Place::Zero, order, opt);
}

LocalReduction reduce_at_inf(const MahlerSystem& s, int order, const ReductionOptions& opt) {
  return reduce_zero_like(s, at_inverse_variable(s.matrix()), Place::Infinity, order, opt);
}

LocalReduction reduce_at_1(const MahlerSystem& s, int order, const ReductionOptions& opt) {
  if (order < 0) throw MahlerError(ErrorKind::ValidationError, "negative order");
  require_fuchsian(s, Place::One);
  const std::size_t n = s.dim();
  const int p = s.p();
  SeriesMatrix bx = compose_exp(s.matrix(), order);
  const auto& b = bx.exact_coeffs();
  const QMatrix& c0 = b[0];
  check_resonance(c0, p, order, opt.tol_res);
  const QMatrix id = QMatrix::identity(n);

  // p^k G_k C_0 - C_0 G_k = sum_{j=1}^k B_j G_{k-j}
  if (opt.exact) {
    std::vector<QMatrix> g{id};
    const QMatrix left = kronecker(c0.transpose(), id);
    const QMatrix right = kronecker(id, c0);
    mpz_class p_k = 1;
    for (int k = 1; k <= order; ++k) {
      p_k *= p;
      QMatrix rhs(n, n);
      for (int j = 1; j <= k; ++j) rhs += b[static_cast<std::size_t>(j)] * g[static_cast<std::size_t>(k - j)];
      QMatrix op = left * GaussianRational(mpq_class(p_k)) - right;
      try {
        g.push_back(unvec(solve(op, vec(rhs)), n));
      } catch (const MahlerError& e) {
        if (e.kind() != ErrorKind::SingularMatrix) throw;
        throw_closest_resonance(c0, p, k);
      }
    }
    return {Place::One, p, c0, SeriesMatrix(Place::One, std::move(g)), std::nullopt};
  }
  const auto bn = bx.numeric_coeffs();
  const CMatrix c0n = bn[0];
  const CMatrix idn = CMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  const CMatrix left = kronecker(c0n.transpose(), idn);
  const CMatrix right = kronecker(idn, c0n);
  std::vector<CMatrix> g{idn};
  double p_k = 1.0;
  for (int k = 1; k <= order; ++k) {
    p_k *= p;
    CMatrix rhs = CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (int j = 1; j <= k; ++j) rhs += bn[static_cast<std::size_t>(j)] * g[static_cast<std::size_t>(k - j)];
    Eigen::FullPivLU<CMatrix> lu(p_k * left - right);
    if (!lu.isInvertible()) throw_closest_resonance(c0, p, k);
    Eigen::VectorXcd x = lu.solve(Eigen::Map<Eigen::VectorXcd>(rhs.data(), rhs.size()));
    g.push_back(Eigen::Map<CMatrix>(x.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
  }
  return {Place::One, p, c0, SeriesMatrix(Place::One, std::move(g)), std::nullopt};
}

LocalReduction reduce_at(const MahlerSystem& s, Place place, int order, const ReductionOptions& opt) {
  switch (place) {
    case Place::Zero:
      return reduce_at_0(s, order, opt);
    case Place::One:
      return reduce_at_1(s, order, opt);
    case Place::Infinity:
      return reduce_at_inf(s, order, opt);
  }
  throw MahlerError(ErrorKind::ValidationError, "unknown place");
}

Residual residual(const MahlerSystem& s, const LocalReduction& l) {
  const int order = l.f_hat.order();
  SeriesMatrix a = l.place == Place::One ? compose_exp(s.matrix(), order) : expand_at(s.matrix(), l.place, order);
  if (a.place() != l.f_hat.place()) throw MahlerError(ErrorKind::PlaceMismatch, "reduction and system places differ");
  SeriesMatrix diff = a * l.f_hat - l.f_hat.phi(s.p()) * l.a_const;
  Residual r;
  r.exact_zero = diff.is_exact_zero();
  r.value = r.exact_zero ? 0.0 : diff.max_coeff_norm();
  return r;
}

double residual_at(const MahlerSystem& s, const LocalReduction& l, Complex t) {
  Complex z = t;
  Complex t_phi = t;
  switch (l.place) {
    case Place::Zero:
      t_phi = std::pow(t, s.p());
      break;
    case Place::Infinity:
      z = 1.0 / t;
      t_phi = std::pow(t, s.p());
      break;
    case Place::One:
      z = std::exp(t);
      t_phi = static_cast<double>(s.p()) * t;
      break;
  }
  CMatrix f = l.f_hat.evaluate(t);
  CMatrix lhs = evaluate(s.matrix(), z) * f;
  CMatrix rhs = l.f_hat.evaluate(t_phi) * to_complex(l.a_const);
  return norm1(lhs - rhs) / std::max(norm1(f), 1e-300);
}

}  // namespace mahler
