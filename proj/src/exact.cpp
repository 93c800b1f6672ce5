#include "mahler/exact.hpp"

#include <climits>

namespace mahler {

namespace {

using PolyMatrix = std::vector<std::vector<Poly>>;

// Rows scaled by the lcm of their denominators; returns the row lcms.
std::vector<Poly> clear_denominators(const RatMatrix& m, PolyMatrix& out) {
  std::vector<Poly> lcms;
  out.assign(m.rows(), std::vector<Poly>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Poly l(GaussianRational(1));
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Poly& d = m(i, j).den();
      if (d.is_constant()) continue;
      l = divmod(l * d, gcd(l, d)).first;
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const RatFun& f = m(i, j);
      if (f.is_zero()) continue;
      out[i][j] = f.num() * divmod(l, f.den()).first;
    }
    lcms.push_back(std::move(l));
  }
  return lcms;
}

Poly exact_quotient(const Poly& a, const Poly& b) { return divmod(a, b).first; }

// Bareiss elimination; the determinant of a square polynomial matrix.
Poly bareiss(PolyMatrix a) {
  const std::size_t n = a.size();
  if (n == 0) return Poly(GaussianRational(1));
  Poly prev(GaussianRational(1));
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && a[r][k].is_zero()) ++r;
      if (r == n) return Poly();
      std::swap(a[k], a[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = exact_quotient(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
      }
      a[i][k] = Poly();
    }
    prev = a[k][k];
  }
  Poly d = a[n - 1][n - 1];
  return negate ? -d : d;
}

PolyMatrix minor_of(const PolyMatrix& a, std::size_t row, std::size_t col) {
  PolyMatrix out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i == row) continue;
    std::vector<Poly> r;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (j != col) r.push_back(a[i][j]);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

RatFun determinant(const RatMatrix& m) {
  if (!m.is_square()) throw MahlerError(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
  PolyMatrix p;
  std::vector<Poly> lcms = clear_denominators(m, p);
  Poly den(GaussianRational(1));
  for (const auto& l : lcms) den = den * l;
  Poly num = bareiss(std::move(p));
  if (num.is_zero()) return RatFun(0);
  return RatFun(num, den);
}

RatMatrix inverse(const RatMatrix& m) {
  if (!m.is_square()) throw MahlerError(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  PolyMatrix p;
  std::vector<Poly> lcms = clear_denominators(m, p);
  Poly det = bareiss(p);
  if (det.is_zero()) throw MahlerError(ErrorKind::SingularMatrix, "matrix is not invertible");
  // M = L^{-1} P, so M^{-1} = adj(P) L / det P.
  RatMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Poly cof = n == 1 ? Poly(GaussianRational(1)) : bareiss(minor_of(p, j, i));
      if (cof.is_zero()) continue;
      if ((i + j) % 2 == 1) cof = -cof;
      out(i, j) = RatFun(cof * lcms[j], det);
    }
  return out;
}

RatMatrix mahler_substitute(const RatMatrix& m, int p) {
  return m.map([p](const RatFun& f) { return f.mahler(p); });
}

RatMatrix at_inverse_variable(const RatMatrix& m) {
  return m.map([](const RatFun& f) { return f.at_inverse_variable(); });
}

QMatrix value_at(const RatMatrix& m, Place place) {
  QMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const RatFun& f = m(i, j);
      if (!f.analytic_at(place)) {
        throw MahlerError(ErrorKind::NotAnalytic, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                                      ") has a pole at " + std::string(place_name(place)));
      }
      out(i, j) = f.value_at(place);
    }
  }
  return out;
}

bool analytic_at(const RatMatrix& m, Place place) {
  for (const auto& f : m.data()) {
    if (!f.analytic_at(place)) return false;
  }
  return true;
}

int min_valuation(const RatMatrix& m, Place place) {
  int best = INT_MAX;
  for (const auto& f : m.data()) {
    if (!f.is_zero()) best = std::min(best, f.valuation(place));
  }
  return best;
}

CMatrix evaluate(const RatMatrix& m, Complex z) {
  CMatrix out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j)(z);
  return out;
}

RatMatrix to_ratmatrix(const QMatrix& m) {
  return m.map([](const GaussianRational& x) { return RatFun(x); });
}

CMatrix to_complex(const QMatrix& m) {
  CMatrix out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).to_complex();
  return out;
}

QMatrix to_exact(const CMatrix& m, long max_den) {
  QMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = rationalize(m(i, j), max_den);
  return out;
}

double norm1(const CMatrix& m) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) best = std::max(best, m.col(j).cwiseAbs().sum());
  return best;
}

namespace {
template <class M>
std::string render(const M& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += m(i, j).to_string();
    }
    out += "]";
  }
  return out + "]";
}
}  // namespace

std::string to_string(const QMatrix& m) { return render(m); }
std::string to_string(const RatMatrix& m) { return render(m); }

CMatrix kronecker(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace mahler
