#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

namespace mahler {

using Complex = std::complex<double>;

/// Element of Q(i), stored as two canonical GMP rationals.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long value) : re_(value) {}  // NOLINT
  GaussianRational(mpq_class re, mpq_class im = 0);

  static GaussianRational imaginary_unit() { return {mpq_class(0), mpq_class(1)}; }
  /// num/den as a real element; throws ZeroFunction for den = 0.
  static GaussianRational fraction(long num, long den);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  /// |x|^2, exact.
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  /// Throws ZeroFunction on zero.
  GaussianRational inverse() const;

  Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }

  /// Literal accepted by the rational-function parser, e.g. "3/2", "-i",
  /// "(1-2/3*i)".
  std::string to_string() const;

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

/// Closest Gaussian rational with denominators bounded by `max_den`
/// (continued fractions on each component).
GaussianRational rationalize(Complex value, long max_den);

}  // namespace mahler
