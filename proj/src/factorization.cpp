#include "mahler/factorization.hpp"

#include <algorithm>

namespace mahler {

ElementaryFactor ElementaryFactor::d(std::size_t n, std::size_t i, RatFun u) {
  if (u.is_zero()) throw MahlerError(ErrorKind::ValidationError, "D factor needs u != 0");
  if (i >= n) throw MahlerError(ErrorKind::DimensionMismatch, "D factor index out of range");
  return {Kind::D, n, i, std::move(u), {}};
}

ElementaryFactor ElementaryFactor::t(std::size_t i, std::vector<GaussianRational> row) {
  if (i >= row.size()) throw MahlerError(ErrorKind::DimensionMismatch, "T factor index out of range");
  if (row[i].is_zero()) throw MahlerError(ErrorKind::ValidationError, "T factor needs a nonzero pivot");
  const std::size_t n = row.size();
  return {Kind::T, n, i, RatFun(1), std::move(row)};
}

RatMatrix ElementaryFactor::matrix() const {
  RatMatrix m = RatMatrix::identity(n);
  if (kind == Kind::D) {
    m(i, i) = u;
  } else {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = RatFun(row[j]);
  }
  return m;
}

bool regular_at(const RatMatrix& m, Place place) {
  return analytic_at(m, place) && !determinant(value_at(m, place)).is_zero();
}

namespace {

Factorization factor_at(const RatMatrix& m, Place place, const RatFun& u) {
  if (!m.is_square()) throw MahlerError(ErrorKind::DimensionMismatch, "factorization needs a square matrix");
  RatFun det = determinant(m);
  if (det.is_zero()) throw MahlerError(ErrorKind::SingularInput, "det M = 0");
  const std::size_t n = m.rows();

  Factorization f{place, u, 0, {}, m, 0};
  f.k = std::max(0, -min_valuation(m, place));
  RatFun uk(1);
  for (int j = 0; j < f.k; ++j) uk *= u;
  RatMatrix cur = m * uk;
  f.det_valuation = determinant(cur).valuation(place);
  const RatFun u_inv = u.inverse();

  for (int v = f.det_valuation; v > 0; --v) {
    QMatrix value = value_at(cur, place);
    auto ker = nullspace(value.transpose());
    if (ker.empty()) throw MahlerError(ErrorKind::SingularInput, "value matrix unexpectedly invertible");
    std::vector<GaussianRational> l = ker.front();
    std::size_t i = 0;
    while (l[i].is_zero()) ++i;
    const GaussianRational scale = l[i].inverse();
    for (auto& x : l) x *= scale;

    // N' = D_{i,u}^{-1} T_{i,l} M'
    RatMatrix next = cur;
    for (std::size_t c = 0; c < n; ++c) {
      RatFun acc(0);
      for (std::size_t r = 0; r < n; ++r)
        if (!l[r].is_zero()) acc += RatFun(l[r]) * cur(r, c);
      next(i, c) = acc * u_inv;
    }
    // M' = T_{i,l}^{-1} D_{i,u} N', and T_{i,l}^{-1} = T_{i,l'} with
    // l'_i = 1, l'_j = -l_j.
    std::vector<GaussianRational> inv_row(n);
    for (std::size_t j = 0; j < n; ++j) inv_row[j] = j == i ? GaussianRational(1) : -l[j];
    f.steps.push_back({ElementaryFactor::t(i, std::move(inv_row)), ElementaryFactor::d(n, i, u)});
    cur = std::move(next);
  }
  f.regular_part = std::move(cur);
  return f;
}

}  // namespace

Factorization factor_regular_at_1(const RatMatrix& m) {
  return factor_at(m, Place::One, RatFun(Poly({GaussianRational(-1), GaussianRational(1)}),
                                         Poly({GaussianRational(1), GaussianRational(1)})));
}

Factorization factor_regular_at_0(const RatMatrix& m) { return factor_at(m, Place::Zero, RatFun::z()); }

RatMatrix prefactor(const Factorization& f) {
  const std::size_t n = f.regular_part.rows();
  RatFun uk(1);
  for (int j = 0; j < f.k; ++j) uk *= f.uniformizer;
  RatMatrix out = RatMatrix::identity(n) * uk.inverse();
  for (const auto& s : f.steps) out = out * s.t.matrix() * s.d.matrix();
  return out;
}

RatMatrix reassemble(const Factorization& f) { return prefactor(f) * f.regular_part; }

}  // namespace mahler
