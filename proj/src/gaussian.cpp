#include "mahler/gaussian.hpp"

#include <cmath>

#include "mahler/error.hpp"

namespace mahler {

GaussianRational::GaussianRational(mpq_class re, mpq_class im)
    : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::fraction(long num, long den) {
  if (den == 0) throw MahlerError(ErrorKind::ZeroFunction, "zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return {q, mpq_class(0)};
}

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) throw MahlerError(ErrorKind::ZeroFunction, "inverse of zero");
  mpq_class n = norm();
  return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw MahlerError(ErrorKind::ZeroFunction, "division by zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

std::string GaussianRational::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = im_.get_str() + "*i";
  }
  if (sgn(re_) == 0) return imag;
  std::string out = "(" + re_.get_str();
  if (sgn(im_) > 0) out += "+";
  return out + imag + ")";
}

namespace {

mpq_class best_rational(double x, long max_den) {
  // Continued-fraction convergents, stopping before the denominator bound.
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(r);
    if (std::abs(a) > 1e15) break;
    long ai = static_cast<long>(a);
    long h2 = ai * h1 + h0;
    long k2 = ai * k1 + k0;
    if (k2 > max_den || k2 <= 0) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    double frac = r - a;
    if (std::abs(frac) < 1e-15) break;
    r = 1.0 / frac;
  }
  if (k1 == 0) return mpq_class(static_cast<long>(std::llround(x)));
  mpq_class q(h1, k1);
  q.canonicalize();
  return q;
}

}  // namespace

GaussianRational rationalize(Complex value, long max_den) {
  return {best_rational(value.real(), max_den), best_rational(value.imag(), max_den)};
}

}  // namespace mahler
