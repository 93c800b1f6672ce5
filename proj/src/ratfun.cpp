#include "mahler/ratfun.hpp"

#include <cmath>

#include "mahler/error.hpp"

namespace mahler {

std::string_view place_name(Place place) {
  switch (place) {
    case Place::Zero: return "0";
    case Place::One: return "1";
    case Place::Infinity: return "inf";
  }
  return "?";
}

Place parse_place(std::string_view text) {
  if (text == "0") return Place::Zero;
  if (text == "1") return Place::One;
  if (text == "inf" || text == "infinity") return Place::Infinity;
  throw MahlerError(ErrorKind::ValidationError, "unknown place '" + std::string(text) + "'");
}

RatFun::RatFun(GaussianRational constant) : num_(std::move(constant)), den_(GaussianRational(1)) {}

RatFun::RatFun(Poly num) : num_(std::move(num)), den_(GaussianRational(1)) {}

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw MahlerError(ErrorKind::ZeroFunction, "zero denominator");
  normalize();
}

void RatFun::normalize() {
  if (num_.is_zero()) {
    den_ = Poly(GaussianRational(1));
    return;
  }
  if (den_.degree() > 0) {
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = divmod(num_, g).first;
      den_ = divmod(den_, g).first;
    }
  }
  GaussianRational lead = den_.leading();
  if (!lead.is_one()) {
    GaussianRational inv = lead.inverse();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

RatFun RatFun::inverse() const {
  if (is_zero()) throw MahlerError(ErrorKind::ZeroFunction, "inverse of zero rational function");
  return RatFun(den_, num_);
}

RatFun RatFun::mahler(int p) const {
  // gcd(a(z^p), b(z^p)) = 1 whenever gcd(a, b) = 1, and monicity is kept.
  RatFun out;
  out.num_ = num_.substitute_power(p);
  out.den_ = den_.substitute_power(p);
  return out;
}

RatFun RatFun::at_inverse_variable() const {
  if (is_zero()) return {};
  int a = num_.degree();
  int b = den_.degree();
  int n = std::max(a, b);
  // f(1/z) = z^n num(1/z) / (z^n den(1/z)).
  return RatFun(num_.reversed(n), den_.reversed(n));
}

int RatFun::valuation(Place place) const {
  if (is_zero()) throw MahlerError(ErrorKind::ZeroFunction, "valuation of the zero function");
  switch (place) {
    case Place::Zero:
      return num_.low_degree() - den_.low_degree();
    case Place::One: {
      GaussianRational one(1);
      return num_.shift(one).low_degree() - den_.shift(one).low_degree();
    }
    case Place::Infinity:
      return den_.degree() - num_.degree();
  }
  return 0;
}

GaussianRational RatFun::value_at(Place place) const {
  if (is_zero()) return {};
  int v = valuation(place);
  if (v < 0) {
    throw MahlerError(ErrorKind::NotAnalytic,
                      to_string() + " has a pole at " + std::string(place_name(place)));
  }
  if (v > 0) return {};
  switch (place) {
    case Place::Zero:
      return num_.coeff(0) / den_.coeff(0);
    case Place::One:
      return num_(GaussianRational(1)) / den_(GaussianRational(1));
    case Place::Infinity:
      return num_.leading() / den_.leading();
  }
  return {};
}

Complex RatFun::operator()(Complex z) const {
  Complex d = den_(z);
  double tau = 1e-12 * std::pow(1.0 + std::abs(z), den_.degree());
  if (std::abs(d) < tau) {
    throw MahlerError(ErrorKind::PoleHit, "denominator of " + to_string() + " vanishes at the evaluation point");
  }
  return num_(z) / d;
}

RatFun& RatFun::operator+=(const RatFun& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

RatFun& RatFun::operator-=(const RatFun& o) {
  if (den_ == o.den_) {
    num_ -= o.num_;
  } else {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

RatFun& RatFun::operator*=(const RatFun& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) {
    *this = RatFun();
    return *this;
  }
  if (o.den_.degree() == 0 && o.num_.degree() == 0) {
    num_ = num_.scaled(o.num_.coeff(0));
    return *this;
  }
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

RatFun& RatFun::operator/=(const RatFun& o) { return *this *= o.inverse(); }

RatFun operator-(const RatFun& a) {
  RatFun out = a;
  out.num_ = -a.num_;
  return out;
}

std::string RatFun::to_string() const {
  std::string n = num_.to_string();
  if (den_.degree() == 0) return n;
  bool n_simple = num_.degree() <= 0 && n.find_first_of("+-", 1) == std::string::npos;
  std::string ns = n_simple ? n : "(" + n + ")";
  return ns + "/(" + den_.to_string() + ")";
}

RatFun sum_of_products(const std::vector<std::pair<const RatFun*, const RatFun*>>& terms) {
  if (terms.size() == 1) return *terms[0].first * *terms[0].second;
  std::vector<Poly> nums, dens;
  Poly l(GaussianRational(1));
  for (const auto& [x, y] : terms) {
    nums.push_back(x->num() * y->num());
    Poly d = x->den() * y->den();
    if (!d.is_constant()) {
      Poly g = gcd(l, d);
      l = g.is_constant() ? l * d : l * divmod(d, g).first;
    }
    dens.push_back(std::move(d));
  }
  Poly num;
  for (std::size_t k = 0; k < nums.size(); ++k) num += nums[k] * divmod(l, dens[k]).first;
  return RatFun(num, l);
}

}  // namespace mahler
