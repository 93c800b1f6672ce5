#include "mahler/series.hpp"

namespace mahler {
namespace {

CMatrix zero_like(const CMatrix& m) { return CMatrix::Zero(m.rows(), m.cols()); }
QMatrix zero_like(const QMatrix& m) { return QMatrix(m.rows(), m.cols()); }

template <class Mat>
std::vector<Mat> multiply(const std::vector<Mat>& a, const std::vector<Mat>& b, int order) {
  std::vector<Mat> out;
  out.reserve(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) {
    Mat acc = a[0] * b[static_cast<std::size_t>(k)];
    for (int j = 1; j <= k; ++j) acc += a[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(k - j)];
    out.push_back(std::move(acc));
  }
  return out;
}

bool exact_invertible(const QMatrix& m) {
  return !determinant(m).is_zero();
}

std::vector<GaussianRational> exact_taylor(const Poly& num, const Poly& den, int order) {
  const GaussianRational d0_inv = den.coeff(0).inverse();
  std::vector<GaussianRational> q(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) {
    GaussianRational acc = num.coeff(k);
    for (int j = 1; j <= std::min(k, den.degree()); ++j) acc -= den.coeff(j) * q[static_cast<std::size_t>(k - j)];
    q[static_cast<std::size_t>(k)] = acc * d0_inv;
  }
  return q;
}

// Local numerator/denominator in the variable of the place.
std::pair<Poly, Poly> localize(const RatFun& f, Place place) {
  switch (place) {
    case Place::Zero:
      return {f.num(), f.den()};
    case Place::One:
      return {f.num().shift(GaussianRational(1)), f.den().shift(GaussianRational(1))};
    case Place::Infinity: {
      RatFun g = f.at_inverse_variable();
      return {g.num(), g.den()};
    }
  }
  return {};
}

}  // namespace

SeriesMatrix::SeriesMatrix(Place place, std::vector<QMatrix> coeffs) : place_(place), coeffs_(std::move(coeffs)) {
  if (std::get<0>(coeffs_).empty()) throw MahlerError(ErrorKind::ValidationError, "series needs a constant term");
}

SeriesMatrix::SeriesMatrix(Place place, std::vector<CMatrix> coeffs) : place_(place), coeffs_(std::move(coeffs)) {
  if (std::get<1>(coeffs_).empty()) throw MahlerError(ErrorKind::ValidationError, "series needs a constant term");
}

SeriesMatrix SeriesMatrix::identity(Place place, std::size_t n, int order) {
  std::vector<QMatrix> c(static_cast<std::size_t>(order) + 1, QMatrix(n, n));
  c[0] = QMatrix::identity(n);
  return SeriesMatrix(place, std::move(c));
}

int SeriesMatrix::order() const {
  return std::visit([](const auto& v) { return static_cast<int>(v.size()) - 1; }, coeffs_);
}

std::size_t SeriesMatrix::rows() const {
  if (is_exact()) return std::get<0>(coeffs_)[0].rows();
  return static_cast<std::size_t>(std::get<1>(coeffs_)[0].rows());
}

std::size_t SeriesMatrix::cols() const {
  if (is_exact()) return std::get<0>(coeffs_)[0].cols();
  return static_cast<std::size_t>(std::get<1>(coeffs_)[0].cols());
}

const std::vector<QMatrix>& SeriesMatrix::exact_coeffs() const {
  if (!is_exact()) throw MahlerError(ErrorKind::ValidationError, "series has floating coefficients");
  return std::get<0>(coeffs_);
}

std::vector<CMatrix> SeriesMatrix::numeric_coeffs() const {
  if (!is_exact()) return std::get<1>(coeffs_);
  std::vector<CMatrix> out;
  for (const auto& c : std::get<0>(coeffs_)) out.push_back(to_complex(c));
  return out;
}

CMatrix SeriesMatrix::numeric_coeff(int k) const {
  if (is_exact()) return to_complex(std::get<0>(coeffs_)[static_cast<std::size_t>(k)]);
  return std::get<1>(coeffs_)[static_cast<std::size_t>(k)];
}

SeriesMatrix SeriesMatrix::truncated(int order) const {
  if (order > this->order()) throw MahlerError(ErrorKind::ValidationError, "cannot extend a truncated series");
  return std::visit(
      [&](const auto& v) {
        using V = std::decay_t<decltype(v)>;
        return SeriesMatrix(place_, V(v.begin(), v.begin() + order + 1));
      },
      coeffs_);
}

SeriesMatrix SeriesMatrix::to_numeric() const { return SeriesMatrix(place_, numeric_coeffs()); }

SeriesMatrix SeriesMatrix::inverse() const {
  const int n = order();
  if (is_exact()) {
    const auto& s = std::get<0>(coeffs_);
    if (!s[0].is_square() || !exact_invertible(s[0])) {
      throw MahlerError(ErrorKind::SingularLeadingTerm, "constant term is not invertible");
    }
    QMatrix t0 = mahler::inverse(s[0]);
    std::vector<QMatrix> t{t0};
    for (int k = 1; k <= n; ++k) {
      QMatrix acc = s[1] * t[static_cast<std::size_t>(k - 1)];
      for (int j = 2; j <= k; ++j) acc += s[static_cast<std::size_t>(j)] * t[static_cast<std::size_t>(k - j)];
      t.push_back(-(t0 * acc));
    }
    return SeriesMatrix(place_, std::move(t));
  }
  const auto& s = std::get<1>(coeffs_);
  Eigen::FullPivLU<CMatrix> lu(s[0]);
  if (s[0].rows() != s[0].cols() || !lu.isInvertible()) {
    throw MahlerError(ErrorKind::SingularLeadingTerm, "constant term is not invertible");
  }
  CMatrix t0 = lu.inverse();
  std::vector<CMatrix> t{t0};
  for (int k = 1; k <= n; ++k) {
    CMatrix acc = zero_like(s[0]);
    for (int j = 1; j <= k; ++j) acc += s[static_cast<std::size_t>(j)] * t[static_cast<std::size_t>(k - j)];
    t.push_back(-(t0 * acc));
  }
  return SeriesMatrix(place_, std::move(t));
}

SeriesMatrix SeriesMatrix::phi(int p) const {
  const int n = order();
  return std::visit(
      [&](const auto& v) {
        using V = std::decay_t<decltype(v)>;
        V out;
        out.reserve(v.size());
        if (place_ == Place::One) {
          mpz_class scale = 1;
          for (int k = 0; k <= n; ++k) {
            if constexpr (std::is_same_v<V, std::vector<QMatrix>>) {
              out.push_back(v[static_cast<std::size_t>(k)] * GaussianRational(mpq_class(scale)));
            } else {
              out.push_back(v[static_cast<std::size_t>(k)] * scale.get_d());
            }
            scale *= p;
          }
        } else {
          for (int k = 0; k <= n; ++k) {
            if (k % p == 0) {
              out.push_back(v[static_cast<std::size_t>(k / p)]);
            } else {
              out.push_back(zero_like(v[0]));
            }
          }
        }
        return SeriesMatrix(place_, std::move(out));
      },
      coeffs_);
}

CMatrix SeriesMatrix::evaluate(Complex t) const {
  std::vector<CMatrix> c = numeric_coeffs();
  CMatrix acc = c.back();
  for (int k = order() - 1; k >= 0; --k) acc = acc * t + c[static_cast<std::size_t>(k)];
  return acc;
}

double SeriesMatrix::max_coeff_norm() const {
  double best = 0.0;
  for (const auto& c : numeric_coeffs()) best = std::max(best, norm1(c));
  return best;
}

bool SeriesMatrix::is_exact_zero() const {
  if (!is_exact()) return false;
  for (const auto& c : std::get<0>(coeffs_)) {
    if (!c.is_zero()) return false;
  }
  return true;
}

namespace {
void check_compatible(const SeriesMatrix& a, const SeriesMatrix& b) {
  if (a.place() != b.place()) throw MahlerError(ErrorKind::PlaceMismatch, "series live at different places");
}

template <class Op>
SeriesMatrix combine(const SeriesMatrix& a, const SeriesMatrix& b, Op op) {
  check_compatible(a, b);
  int n = std::min(a.order(), b.order());
  if (a.is_exact() && b.is_exact()) {
    std::vector<QMatrix> out;
    for (int k = 0; k <= n; ++k) out.push_back(op(a.exact_coeffs()[static_cast<std::size_t>(k)], b.exact_coeffs()[static_cast<std::size_t>(k)]));
    return SeriesMatrix(a.place(), std::move(out));
  }
  std::vector<CMatrix> out;
  for (int k = 0; k <= n; ++k) out.push_back(op(a.numeric_coeff(k), b.numeric_coeff(k)));
  return SeriesMatrix(a.place(), std::move(out));
}
}  // namespace

SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b) {
  check_compatible(a, b);
  int n = std::min(a.order(), b.order());
  if (a.is_exact() && b.is_exact()) return SeriesMatrix(a.place(), multiply(a.exact_coeffs(), b.exact_coeffs(), n));
  return SeriesMatrix(a.place(), multiply(a.numeric_coeffs(), b.numeric_coeffs(), n));
}

SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x + y; });
}

SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x - y; });
}

SeriesMatrix operator*(const SeriesMatrix& a, const QMatrix& c) {
  if (a.is_exact()) {
    std::vector<QMatrix> out;
    for (const auto& x : a.exact_coeffs()) out.push_back(x * c);
    return SeriesMatrix(a.place(), std::move(out));
  }
  return a * to_complex(c);
}

SeriesMatrix operator*(const QMatrix& c, const SeriesMatrix& a) {
  if (a.is_exact()) {
    std::vector<QMatrix> out;
    for (const auto& x : a.exact_coeffs()) out.push_back(c * x);
    return SeriesMatrix(a.place(), std::move(out));
  }
  std::vector<CMatrix> out;
  CMatrix cc = to_complex(c);
  for (const auto& x : a.numeric_coeffs()) out.push_back(cc * x);
  return SeriesMatrix(a.place(), std::move(out));
}

SeriesMatrix operator*(const SeriesMatrix& a, const CMatrix& c) {
  std::vector<CMatrix> out;
  for (const auto& x : a.numeric_coeffs()) out.push_back(x * c);
  return SeriesMatrix(a.place(), std::move(out));
}

bool operator==(const SeriesMatrix& a, const SeriesMatrix& b) {
  if (a.place() != b.place() || a.order() != b.order() || a.is_exact() != b.is_exact()) return false;
  if (a.is_exact()) return a.exact_coeffs() == b.exact_coeffs();
  auto ca = a.numeric_coeffs();
  auto cb = b.numeric_coeffs();
  for (std::size_t k = 0; k < ca.size(); ++k) {
    if (ca[k] != cb[k]) return false;
  }
  return true;
}

SeriesMatrix expand_at(const RatMatrix& m, Place place, int order) {
  if (order < 0) throw MahlerError(ErrorKind::ValidationError, "negative truncation order");
  std::vector<QMatrix> coeffs(static_cast<std::size_t>(order) + 1, QMatrix(m.rows(), m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const RatFun& f = m(i, j);
      if (f.is_zero()) continue;
      if (!f.analytic_at(place)) {
        throw MahlerError(ErrorKind::NotAnalytic, "entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                                                      f.to_string() + " has a pole at " +
                                                      std::string(place_name(place)));
      }
      auto [num, den] = localize(f, place);
      auto q = exact_taylor(num, den, order);
      for (int k = 0; k <= order; ++k) coeffs[static_cast<std::size_t>(k)](i, j) = q[static_cast<std::size_t>(k)];
    }
  }
  return SeriesMatrix(place, std::move(coeffs));
}

SeriesMatrix compose_exp(const RatMatrix& m, int order) {
  SeriesMatrix shifted = expand_at(m, Place::One, order);
  const auto& c = shifted.exact_coeffs();
  // e^u - 1 = sum_{k>=1} u^k / k!
  std::vector<GaussianRational> e(static_cast<std::size_t>(order) + 1);
  mpz_class fact = 1;
  for (int k = 1; k <= order; ++k) {
    fact *= k;
    e[static_cast<std::size_t>(k)] = GaussianRational(mpq_class(1, fact));
  }
  auto times_e = [&](const std::vector<QMatrix>& r) {
    std::vector<QMatrix> out(r.size(), QMatrix(m.rows(), m.cols()));
    for (int k = 1; k <= order; ++k)
      for (int j = 1; j <= k; ++j) {
        if (r[static_cast<std::size_t>(k - j)].is_zero()) continue;
        out[static_cast<std::size_t>(k)] += r[static_cast<std::size_t>(k - j)] * e[static_cast<std::size_t>(j)];
      }
    return out;
  };
  // Horner: R = c_N; R = R * (e^u - 1) + c_j.
  std::vector<QMatrix> r(static_cast<std::size_t>(order) + 1, QMatrix(m.rows(), m.cols()));
  for (int j = order; j >= 0; --j) {
    r = times_e(r);
    r[0] += c[static_cast<std::size_t>(j)];
  }
  return SeriesMatrix(Place::One, std::move(r));
}

std::vector<Complex> numeric_taylor(const RatFun& f, Place place, int order) {
  std::vector<Complex> q(static_cast<std::size_t>(order) + 1, Complex{0.0, 0.0});
  if (f.is_zero()) return q;
  if (!f.analytic_at(place)) {
    throw MahlerError(ErrorKind::NotAnalytic, f.to_string() + " has a pole at " + std::string(place_name(place)));
  }
  auto [num, den] = localize(f, place);
  Complex d0 = den.coeff(0).to_complex();
  std::vector<Complex> d;
  for (const auto& x : den.coeffs()) d.push_back(x.to_complex());
  for (int k = 0; k <= order; ++k) {
    Complex acc = num.coeff(k).to_complex();
    for (int j = 1; j <= std::min(k, den.degree()); ++j) acc -= d[static_cast<std::size_t>(j)] * q[static_cast<std::size_t>(k - j)];
    q[static_cast<std::size_t>(k)] = acc / d0;
  }
  return q;
}

}  // namespace mahler
