#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mahler/poly.hpp"

namespace mahler {

/// The three places where local theory is available.
enum class Place { Zero, One, Infinity };

std::string_view place_name(Place place);
/// Accepts "0", "1", "inf" (also "infinity").
Place parse_place(std::string_view text);

/// Element of Q(i)(z) in canonical form: gcd(num, den) = 1, den monic.
class RatFun {
 public:
  RatFun() : den_(GaussianRational(1)) {}
  RatFun(GaussianRational constant);  // NOLINT
  RatFun(long constant) : RatFun(GaussianRational(constant)) {}  // NOLINT
  RatFun(Poly num);  // NOLINT
  RatFun(Poly num, Poly den);

  static RatFun z() { return RatFun(Poly::z()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.degree() == 0 && num_.degree() == 0 && num_.coeff(0).is_one(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  /// Constant value; only meaningful when is_constant().
  GaussianRational constant_value() const { return num_.coeff(0); }

  /// Throws ZeroFunction.
  RatFun inverse() const;
  /// f(z^p).
  RatFun mahler(int p) const;
  /// f(1/z).
  RatFun at_inverse_variable() const;

  /// Order of vanishing at the place (negative for poles); f(1/z) at 0 for
  /// infinity. Throws ZeroFunction for f = 0.
  int valuation(Place place) const;
  bool analytic_at(Place place) const { return is_zero() || valuation(place) >= 0; }
  /// Exact value at the place; throws NotAnalytic on a pole.
  GaussianRational value_at(Place place) const;

  /// Floating evaluation; throws PoleHit when |den(z)| < 1e-12 (1+|z|)^deg.
  Complex operator()(Complex z) const;

  RatFun& operator+=(const RatFun& o);
  RatFun& operator-=(const RatFun& o);
  RatFun& operator*=(const RatFun& o);
  RatFun& operator/=(const RatFun& o);
  friend RatFun operator+(RatFun a, const RatFun& b) { return a += b; }
  friend RatFun operator-(RatFun a, const RatFun& b) { return a -= b; }
  friend RatFun operator*(RatFun a, const RatFun& b) { return a *= b; }
  friend RatFun operator/(RatFun a, const RatFun& b) { return a /= b; }
  friend RatFun operator-(const RatFun& a);
  friend bool operator==(const RatFun& a, const RatFun& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

  /// Literal in the parser grammar, e.g. "(2*z+1)/(z+2)".
  std::string to_string() const;

 private:
  void normalize();
  Poly num_;
  Poly den_;
};

/// Sum of products over a common denominator, normalized once.
RatFun sum_of_products(const std::vector<std::pair<const RatFun*, const RatFun*>>& terms);

}  // namespace mahler
