#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mahler/gaussian.hpp"

namespace mahler {

/// Dense univariate polynomial over Q(i); coefficient k multiplies z^k.
/// The zero polynomial has no coefficients.
class Poly {
 public:
  Poly() = default;
  Poly(GaussianRational constant);  // NOLINT
  explicit Poly(std::vector<GaussianRational> coeffs);

  static Poly z() { return Poly({GaussianRational(0), GaussianRational(1)}); }
  static Poly monomial(const GaussianRational& c, int degree);

  const std::vector<GaussianRational>& coeffs() const { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  GaussianRational coeff(int k) const;
  const GaussianRational& leading() const { return coeffs_.back(); }

  /// Order of vanishing at z = 0; the zero polynomial is not allowed.
  int low_degree() const;

  GaussianRational operator()(const GaussianRational& z) const;
  Complex operator()(Complex z) const;

  Poly monic() const;
  Poly derivative() const;
  /// p(z^k).
  Poly substitute_power(int k) const;
  /// p(z + c).
  Poly shift(const GaussianRational& c) const;
  /// z^n p(1/z); requires n >= degree.
  Poly reversed(int n) const;
  Poly scaled(const GaussianRational& c) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  std::string to_string(const std::string& var = "z") const;

 private:
  void trim();
  std::vector<GaussianRational> coeffs_;
};

/// Euclidean division; throws ZeroFunction for a zero divisor.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
/// Monic gcd (zero if both are zero).
Poly gcd(const Poly& a, const Poly& b);
/// p / gcd(p, p'), made monic.
Poly square_free_part(const Poly& p);
/// Numeric roots (companion eigenvalues followed by Newton polishing).
std::vector<Complex> numeric_roots(const Poly& p);

}  // namespace mahler
