#include "mahler/poly.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "mahler/error.hpp"

namespace mahler {

Poly::Poly(GaussianRational constant) {
  if (!constant.is_zero()) coeffs_.push_back(std::move(constant));
}

Poly::Poly(std::vector<GaussianRational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(const GaussianRational& c, int degree) {
  std::vector<GaussianRational> coeffs(static_cast<size_t>(degree) + 1);
  coeffs.back() = c;
  return Poly(std::move(coeffs));
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

GaussianRational Poly::coeff(int k) const {
  if (k < 0 || k > degree()) return {};
  return coeffs_[static_cast<size_t>(k)];
}

int Poly::low_degree() const {
  if (is_zero()) throw MahlerError(ErrorKind::ZeroFunction, "valuation of zero polynomial");
  int k = 0;
  while (coeffs_[static_cast<size_t>(k)].is_zero()) ++k;
  return k;
}

GaussianRational Poly::operator()(const GaussianRational& z) const {
  GaussianRational acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= z;
    acc += *it;
  }
  return acc;
}

Complex Poly::operator()(Complex z) const {
  Complex acc{0.0, 0.0};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + it->to_complex();
  return acc;
}

Poly Poly::monic() const {
  if (is_zero()) return {};
  GaussianRational inv = leading().inverse();
  return scaled(inv);
}

Poly Poly::scaled(const GaussianRational& c) const {
  std::vector<GaussianRational> out = coeffs_;
  for (auto& x : out) x *= c;
  return Poly(std::move(out));
}

Poly Poly::derivative() const {
  if (degree() < 1) return {};
  std::vector<GaussianRational> out(coeffs_.size() - 1);
  for (size_t k = 1; k < coeffs_.size(); ++k) out[k - 1] = coeffs_[k] * GaussianRational(static_cast<long>(k));
  return Poly(std::move(out));
}

Poly Poly::substitute_power(int k) const {
  if (is_zero()) return {};
  std::vector<GaussianRational> out(static_cast<size_t>(degree()) * static_cast<size_t>(k) + 1);
  for (size_t j = 0; j < coeffs_.size(); ++j) out[j * static_cast<size_t>(k)] = coeffs_[j];
  return Poly(std::move(out));
}

Poly Poly::shift(const GaussianRational& c) const {
  // Horner in the ring: acc = acc * (z + c) + a_j.
  Poly lin({c, GaussianRational(1)});
  Poly acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * lin + Poly(*it);
  return acc;
}

Poly Poly::reversed(int n) const {
  std::vector<GaussianRational> out(static_cast<size_t>(n) + 1);
  for (int j = 0; j <= degree(); ++j) out[static_cast<size_t>(n - j)] = coeffs_[static_cast<size_t>(j)];
  return Poly(std::move(out));
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

Poly operator-(const Poly& a) {
  std::vector<GaussianRational> out = a.coeffs_;
  for (auto& x : out) x = -x;
  return Poly(std::move(out));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<GaussianRational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Poly(std::move(out));
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const GaussianRational& c = coeffs_[static_cast<size_t>(k)];
    if (c.is_zero()) continue;
    std::string cs = c.to_string();
    bool negative = !cs.empty() && cs[0] == '-';
    std::string body = negative ? cs.substr(1) : cs;
    std::string term;
    if (k == 0) {
      term = body;
    } else {
      std::string mono = k == 1 ? var : var + "^" + std::to_string(k);
      term = body == "1" ? mono : body + "*" + mono;
    }
    if (out.empty()) {
      out = negative ? "-" + term : term;
    } else {
      out += negative ? "-" : "+";
      out += term;
    }
  }
  return out;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw MahlerError(ErrorKind::ZeroFunction, "polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly(), a};
  std::vector<GaussianRational> rem = a.coeffs();
  std::vector<GaussianRational> quot(static_cast<size_t>(a.degree() - b.degree()) + 1);
  GaussianRational lead_inv = b.leading().inverse();
  const auto& bc = b.coeffs();
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    GaussianRational q = rem[static_cast<size_t>(k + b.degree())] * lead_inv;
    if (q.is_zero()) continue;
    quot[static_cast<size_t>(k)] = q;
    for (size_t j = 0; j < bc.size(); ++j) rem[static_cast<size_t>(k) + j] -= q * bc[j];
  }
  rem.resize(static_cast<size_t>(b.degree()));
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a.monic();
  Poly y = b.monic();
  while (!y.is_zero()) {
    Poly r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

Poly square_free_part(const Poly& p) {
  if (p.degree() < 1) return p.monic();
  Poly g = gcd(p, p.derivative());
  return divmod(p, g).first.monic();
}

std::vector<Complex> numeric_roots(const Poly& p) {
  const int n = p.degree();
  if (n < 1) return {};
  std::vector<Complex> c(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) c[static_cast<size_t>(k)] = p.coeffs()[static_cast<size_t>(k)].to_complex();
  std::vector<Complex> roots;
  if (n == 1) {
    roots.push_back(-c[0] / c[1]);
    return roots;
  }
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[static_cast<size_t>(i)] / c[static_cast<size_t>(n)];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  Poly dp = p.derivative();
  for (int i = 0; i < n; ++i) {
    Complex r = solver.eigenvalues()(i);
    for (int it = 0; it < 8; ++it) {
      Complex d = dp(r);
      if (std::abs(d) == 0.0) break;
      Complex step = p(r) / d;
      r -= step;
      if (std::abs(step) <= 1e-17 * (1.0 + std::abs(r))) break;
    }
    roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

}  // namespace mahler
