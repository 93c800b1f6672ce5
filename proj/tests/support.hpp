#pragma once

#include <random>

#include "mahler/exact.hpp"
#include "mahler/factorization.hpp"
#include "mahler/parse.hpp"
#include "mahler/systems.hpp"

namespace mt {

using namespace mahler;

inline RatFun rf(const char* s) { return parse_ratfun(s); }

inline RatMatrix rm(std::initializer_list<std::initializer_list<const char*>> rows) {
  std::vector<RatFun> data;
  std::size_t r = 0, c = 0;
  for (auto row : rows) {
    c = row.size();
    for (auto s : row) data.push_back(parse_ratfun(s));
    ++r;
  }
  return RatMatrix(r, c, std::move(data));
}

inline QMatrix qm(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<GaussianRational> data;
  std::size_t r = 0, c = 0;
  for (auto row : rows) {
    c = row.size();
    for (auto x : row) data.emplace_back(x);
    ++r;
  }
  return QMatrix(r, c, std::move(data));
}

inline CMatrix cm(std::initializer_list<std::initializer_list<Complex>> rows) {
  CMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (auto row : rows) {
    Eigen::Index j = 0;
    for (auto x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }

  // (a + b i) / d with |a|, |b| <= height and d in {1, 2}
  GaussianRational gaussian(long height) {
    long d = integer(1, 2);
    return GaussianRational(mpq_class(integer(-height, height), d), mpq_class(integer(-height, height), d));
  }
  GaussianRational rational(long height) {
    return GaussianRational::fraction(integer(-height, height), integer(1, height));
  }
  Poly poly(int degree, long height) {
    std::vector<GaussianRational> c;
    for (int k = 0; k <= degree; ++k) c.push_back(gaussian(height));
    return Poly(c);
  }
  RatFun ratfun(int degree, long height) {
    Poly den = poly(degree, height);
    while (den.is_zero()) den = poly(degree, height);
    return RatFun(poly(degree, height), den);
  }
  RatMatrix ratmatrix(std::size_t n, int degree, long height) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = ratfun(degree, height);
    return m;
  }
  QMatrix qmatrix(std::size_t r, std::size_t c, long height) {
    QMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = gaussian(height);
    return m;
  }
};

// Entries (a z + b)/(c z + d) with Gaussian integer coefficients of height
// <= h, Fuchsian at 0, 1 and infinity and non-resonant at 1 up to p^max_k.
inline MahlerSystem random_fuchsian(Rng& rng, std::size_t n, long h, int p = 2, int max_k = 64) {
  auto gi = [&] { return GaussianRational(mpq_class(rng.integer(-h, h)), mpq_class(rng.integer(-h, h) / 2)); };
  for (;;) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Poly num({gi(), gi()});
        Poly den({gi(), gi()});
        if (den.is_zero()) den = Poly(GaussianRational(1));
        m(i, j) = RatFun(num, den);
      }
    if (determinant(m).is_zero()) continue;
    MahlerSystem s(p, m);
    bool ok = true;
    for (Place pl : {Place::Zero, Place::One, Place::Infinity}) ok = ok && classify_fuchsian(s, pl).fuchsian;
    if (!ok) continue;
    Eigen::ComplexEigenSolver<CMatrix> es(to_complex(value_at(m, Place::One)), false);
    auto ev = es.eigenvalues();
    for (Eigen::Index a = 0; a < ev.size() && ok; ++a)
      for (Eigen::Index b = 0; b < ev.size() && ok; ++b) {
        double pk = 1;
        for (int k = 1; k <= max_k && ok; ++k) {
          pk *= p;
          if (std::abs(ev(a) - pk * ev(b)) < 1e-6 * std::abs(ev(a))) ok = false;
        }
      }
    if (ok) return s;
  }
}

// Q J Q^{-1} with J a Jordan matrix containing at least one block of size
// >= 2 (when n >= 2) and Q a random Gaussian-integer matrix.
inline QMatrix random_jordan(Rng& rng, std::size_t n) {
  static const std::vector<GaussianRational> pool{
      GaussianRational(1),           GaussianRational(2),   GaussianRational(-1),
      GaussianRational(0, 2),        GaussianRational(3),   GaussianRational(1, 1),
      GaussianRational::fraction(1, 2), GaussianRational(-2, 1)};
  QMatrix j(n, n);
  std::size_t at = 0;
  std::vector<std::size_t> used;
  bool first = true;
  while (at < n) {
    std::size_t left = n - at;
    std::size_t size = first && n >= 2 ? static_cast<std::size_t>(rng.integer(2, static_cast<long>(left)))
                                       : static_cast<std::size_t>(rng.integer(1, static_cast<long>(left)));
    first = false;
    std::size_t e = static_cast<std::size_t>(rng.integer(0, static_cast<long>(pool.size()) - 1));
    if (!used.empty() && rng.integer(0, 2) == 0) e = used[0];  // repeat an eigenvalue in a new block
    used.push_back(e);
    for (std::size_t k = 0; k < size; ++k) {
      j(at + k, at + k) = pool[e];
      if (k + 1 < size) j(at + k, at + k + 1) = GaussianRational(1);
    }
    at += size;
  }
  for (;;) {
    QMatrix q(n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) q(a, b) = GaussianRational(rng.integer(-2, 2), rng.integer(-1, 1));
    if (mahler::determinant(q).is_zero()) continue;
    return q * j * mahler::inverse(q);
  }
}

inline RatFun uniformizer(Place pl) { return pl == Place::One ? rf("(z-1)/(z+1)") : rf("z"); }

inline RatMatrix random_regular(Rng& rng, std::size_t n, Place pl) {
  for (;;) {
    RatMatrix r = rng.ratmatrix(n, 1, 4);
    if (!determinant(r).is_zero() && regular_at(r, pl)) return r;
  }
}

// product of <= 4 elementary pieces (T D, D, or u^{-1} I) times a regular matrix
inline RatMatrix random_input(Rng& rng, std::size_t n, Place pl) {
  const RatFun u = uniformizer(pl);
  RatMatrix m = RatMatrix::identity(n);
  long count = rng.integer(0, 4);
  for (long c = 0; c < count; ++c) {
    std::size_t i = static_cast<std::size_t>(rng.integer(0, static_cast<long>(n) - 1));
    switch (rng.integer(0, 2)) {
      case 0: {
        std::vector<GaussianRational> row(n);
        for (auto& x : row) x = GaussianRational(rng.integer(-3, 3));
        if (row[i].is_zero()) row[i] = 1;
        m = m * ElementaryFactor::t(i, row).matrix() * ElementaryFactor::d(n, i, u).matrix();
        break;
      }
      case 1:
        m = m * ElementaryFactor::d(n, i, u).matrix();
        break;
      default:
        m = m * u.inverse();
    }
  }
  return m * random_regular(rng, n, pl);
}

inline double dist(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace mt
