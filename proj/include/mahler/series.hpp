#pragma once

#include <variant>
#include <vector>

#include "mahler/exact.hpp"

namespace mahler {

/// Truncated matrix power series in the local variable of a place:
/// t = z at 0, t = u (with z = e^u) at 1, t = 1/z at infinity.
/// Coefficients are either all exact (Q(i)) or all floating.
class SeriesMatrix {
 public:
  SeriesMatrix(Place place, std::vector<QMatrix> coeffs);
  SeriesMatrix(Place place, std::vector<CMatrix> coeffs);

  static SeriesMatrix identity(Place place, std::size_t n, int order);

  Place place() const { return place_; }
  /// Truncation order N; coefficients 0..N are stored.
  int order() const;
  std::size_t rows() const;
  std::size_t cols() const;
  bool is_exact() const { return std::holds_alternative<std::vector<QMatrix>>(coeffs_); }

  /// Throws ValidationError for a floating series.
  const std::vector<QMatrix>& exact_coeffs() const;
  std::vector<CMatrix> numeric_coeffs() const;
  CMatrix numeric_coeff(int k) const;

  SeriesMatrix truncated(int order) const;
  SeriesMatrix to_numeric() const;

  /// Inverse up to the same order; throws SingularLeadingTerm.
  SeriesMatrix inverse() const;
  /// The Mahler operator in the local variable: F(t^p) at 0 and infinity,
  /// F(p u) at 1.
  SeriesMatrix phi(int p) const;
  /// Horner evaluation of the truncated sum at t.
  CMatrix evaluate(Complex t) const;
  /// max_k ||coeff_k||_1.
  double max_coeff_norm() const;
  /// Exact series whose coefficients are all zero.
  bool is_exact_zero() const;

  friend SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b);
  friend SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b);
  friend SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b);
  /// Right/left multiplication by a constant matrix.
  friend SeriesMatrix operator*(const SeriesMatrix& a, const QMatrix& c);
  friend SeriesMatrix operator*(const QMatrix& c, const SeriesMatrix& a);
  friend SeriesMatrix operator*(const SeriesMatrix& a, const CMatrix& c);
  friend bool operator==(const SeriesMatrix& a, const SeriesMatrix& b);

 private:
  Place place_;
  std::variant<std::vector<QMatrix>, std::vector<CMatrix>> coeffs_;
};

/// Taylor expansion of a rational matrix in the local variable of the place
/// (z at 0, z - 1 at 1, 1/z at infinity) up to order N. Exact.
/// Throws NotAnalytic if an entry has a pole there.
SeriesMatrix expand_at(const RatMatrix& m, Place place, int order);

/// Taylor coefficients in u of m(e^u), exact over Q(i). Result has place 1.
SeriesMatrix compose_exp(const RatMatrix& m, int order);

/// Floating Taylor coefficients of a rational function at the place
/// (same local variable conventions as expand_at).
std::vector<Complex> numeric_taylor(const RatFun& f, Place place, int order);

}  // namespace mahler
