#include "mahler/galois.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace mahler {
namespace {

using Index = Eigen::Index;

CMatrix eye(Index n) { return CMatrix::Identity(n, n); }

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<CMatrix>(m).singularValues()(0);
}

// Single-linkage clusters of the eigenvalues: a Jordan block of size m
// splits into a ring of radius ~ eps^{1/m}, which the threshold
// scale * tol^{1/n} covers for every m <= n.
std::vector<std::vector<Complex>> cluster(const Eigen::VectorXcd& ev, double delta) {
  const Index n = ev.size();
  std::vector<int> label(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) label[static_cast<std::size_t>(i)] = static_cast<int>(i);
  bool changed = true;
  while (changed) {
    changed = false;
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) {
        auto& li = label[static_cast<std::size_t>(i)];
        auto& lj = label[static_cast<std::size_t>(j)];
        if (li != lj && std::abs(ev(i) - ev(j)) <= delta) {
          li = lj = std::min(li, lj);
          changed = true;
        }
      }
  }
  std::map<int, std::vector<Complex>> groups;
  for (Index i = 0; i < n; ++i) groups[label[static_cast<std::size_t>(i)]].push_back(ev(i));
  std::vector<std::vector<Complex>> out;
  for (auto& [_, g] : groups) out.push_back(std::move(g));
  return out;
}

CMatrix diag_repeated(const std::vector<Complex>& values, const std::vector<int>& mult) {
  Index n = 0;
  for (int m : mult) n += m;
  CMatrix d = CMatrix::Zero(n, n);
  Index at = 0;
  for (std::size_t i = 0; i < values.size(); ++i)
    for (int k = 0; k < mult[i]; ++k, ++at) d(at, at) = values[i];
  return d;
}

// vec(S A0 - B0 S) = (A0^T (x) I - I (x) B0) vec(S), column-major vec
CMatrix hom_operator(const CMatrix& a0, const CMatrix& b0) {
  return kronecker(CMatrix(a0.transpose()), eye(b0.rows())) - kronecker(eye(a0.rows()), b0);
}

GaussianRational pow_int(long p, int k) {
  GaussianRational out(1);
  GaussianRational base(p);
  for (int i = 0; i < std::abs(k); ++i) out *= base;
  return k >= 0 ? out : GaussianRational(1) / out;
}

std::set<int> log_degrees(const CMatrix& a1, const CMatrix& b1, int p, double tol) {
  Eigen::VectorXcd la = Eigen::ComplexEigenSolver<CMatrix>(a1, false).eigenvalues();
  Eigen::VectorXcd lb = Eigen::ComplexEigenSolver<CMatrix>(b1, false).eigenvalues();
  std::set<int> ks;
  for (Index i = 0; i < la.size(); ++i)
    for (Index j = 0; j < lb.size(); ++j) {
      double ratio = std::log(std::abs(lb(j)) / std::abs(la(i))) / std::log(static_cast<double>(p));
      int k = static_cast<int>(std::lround(ratio));
      Complex lhs = std::pow(static_cast<double>(p), k) * la(i);
      if (std::abs(lhs - lb(j)) <= std::sqrt(tol) * std::max(1.0, std::abs(lb(j)))) ks.insert(k);
    }
  return ks;
}

}  // namespace

DunfordPair dunford(const CMatrix& a, double tol) {
  const Index n = a.rows();
  if (n != a.cols()) throw MahlerError(ErrorKind::DimensionMismatch, "dunford needs a square matrix");
  if (n == 0) return {a, a, {}, {}, a};
  Eigen::FullPivLU<CMatrix> lu(a);
  if (!lu.isInvertible()) throw MahlerError(ErrorKind::SingularMatrix, "dunford needs an invertible matrix");

  Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<CMatrix>(a, false).eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  const double delta = scale * std::pow(tol, 1.0 / static_cast<double>(n));

  DunfordPair out;
  out.basis = CMatrix(n, n);
  Index col = 0;
  for (const auto& group : cluster(ev, delta)) {
    Complex lambda(0.0, 0.0);
    for (Complex x : group) lambda += x;
    lambda /= static_cast<double>(group.size());
    const int m = static_cast<int>(group.size());
    CMatrix shifted = a - lambda * eye(n);
    CMatrix power = eye(n);
    for (int k = 0; k < m; ++k) power = power * shifted;
    Eigen::JacobiSVD<CMatrix> svd(power, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double thr = std::sqrt(tol) * std::pow(std::max(1.0, spectral_norm(shifted)), m);
    if (sv(n - m) > thr || (m < n && sv(n - m - 1) <= thr)) {
      throw MahlerError(ErrorKind::IllConditioned, "generalized eigenspaces are not separated");
    }
    out.basis.middleCols(col, m) = svd.matrixV().rightCols(m);
    col += m;
    out.eigenvalues.push_back(lambda);
    out.multiplicities.push_back(m);
  }
  Eigen::JacobiSVD<CMatrix> bsvd(out.basis);
  const double cond = bsvd.singularValues()(0) / bsvd.singularValues()(n - 1);
  if (!(cond < 1.0 / tol)) throw MahlerError(ErrorKind::IllConditioned, "eigenvector basis is nearly singular");

  CMatrix vinv = out.basis.inverse();
  out.s = out.basis * diag_repeated(out.eigenvalues, out.multiplicities) * vinv;
  std::vector<Complex> inv_ev;
  for (Complex x : out.eigenvalues) inv_ev.push_back(1.0 / x);
  out.u = out.basis * diag_repeated(inv_ev, out.multiplicities) * vinv * a;
  return out;
}

std::optional<ExactDunford> dunford_exact(const QMatrix& a) {
  const std::size_t n = a.rows();
  DunfordPair d;
  try {
    d = dunford(to_complex(a));
  } catch (const MahlerError& e) {
    if (e.kind() == ErrorKind::IllConditioned) return std::nullopt;
    throw;
  }
  QMatrix basis(n, n);
  QMatrix diag(n, n);
  std::size_t col = 0;
  for (std::size_t i = 0; i < d.eigenvalues.size(); ++i) {
    GaussianRational lambda = rationalize(d.eigenvalues[i], 1000);
    const auto m = static_cast<std::size_t>(d.multiplicities[i]);
    QMatrix shifted = a - lambda * QMatrix::identity(n);
    auto kernel = nullspace(power(shifted, static_cast<unsigned>(m)));
    if (kernel.size() != m) return std::nullopt;
    for (const auto& v : kernel) {
      for (std::size_t r = 0; r < n; ++r) basis(r, col) = v[r];
      diag(col, col) = lambda;
      ++col;
    }
  }
  QMatrix vinv;
  try {
    vinv = inverse(basis);
  } catch (const MahlerError&) {
    return std::nullopt;
  }
  QMatrix s = basis * diag * vinv;
  return ExactDunford{s, inverse(s) * a};
}

Complex apply_character(const Character& c, Complex z, int p, double tol) {
  if (z == Complex(0.0, 0.0)) throw MahlerError(ErrorKind::ValidationError, "characters are defined on C*");
  switch (c.kind) {
    case Character::Kind::Identity:
      return z;
    case Character::Kind::Gamma1:
      return z / std::abs(z);
    case Character::Kind::Gamma2: {
      double x = std::log(std::abs(z)) / std::log(static_cast<double>(p));
      return std::polar(1.0, 2.0 * std::numbers::pi * x);
    }
    case Character::Kind::EigenvalueMap:
      for (const auto& [key, value] : c.table) {
        if (std::abs(key - z) <= tol * std::max(1.0, std::abs(z))) return value;
      }
      throw MahlerError(ErrorKind::UnmappedEigenvalue, "character has no value at this eigenvalue");
    case Character::Kind::Product: {
      Complex out(1.0, 0.0);
      for (const auto& f : c.factors) out *= apply_character(f, z, p, tol);
      return out;
    }
  }
  return z;
}

CMatrix unipotent_power(const CMatrix& u, Complex lambda) {
  const Index n = u.rows();
  CMatrix nil = u - eye(n);
  CMatrix term = eye(n);
  CMatrix out = eye(n);
  Complex binom(1.0, 0.0);
  for (Index k = 1; k < n; ++k) {
    binom *= (lambda - static_cast<double>(k - 1)) / static_cast<double>(k);
    term = term * nil;
    out += binom * term;
  }
  return out;
}

CMatrix power_twist(const DunfordPair& d, const Character& c, Complex lambda, int p) {
  std::vector<Complex> values;
  for (Complex x : d.eigenvalues) values.push_back(apply_character(c, x, p));
  CMatrix gs = d.basis * diag_repeated(values, d.multiplicities) * d.basis.inverse();
  return gs * unipotent_power(d.u, lambda);
}

CMatrix power_twist(const CMatrix& a, const Character& c, Complex lambda, int p) {
  return power_twist(dunford(a), c, lambda, p);
}

std::vector<CMatrix> solve_constant_hom(const CMatrix& a0, const CMatrix& b0, double tol) {
  if (a0.rows() != a0.cols() || b0.rows() != b0.cols()) {
    throw MahlerError(ErrorKind::DimensionMismatch, "solve_constant_hom needs square matrices");
  }
  const Index n1 = a0.rows(), n2 = b0.rows();
  CMatrix op = hom_operator(a0, b0);
  Eigen::JacobiSVD<CMatrix> svd(op, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double thr = tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  std::vector<CMatrix> basis;
  for (Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > thr) continue;
    Eigen::VectorXcd v = svd.matrixV().col(k);
    basis.push_back(Eigen::Map<CMatrix>(v.data(), n2, n1));
  }
  return basis;
}

std::vector<QMatrix> solve_constant_hom(const QMatrix& a0, const QMatrix& b0) {
  if (!a0.is_square() || !b0.is_square()) {
    throw MahlerError(ErrorKind::DimensionMismatch, "solve_constant_hom needs square matrices");
  }
  const std::size_t n1 = a0.rows(), n2 = b0.rows();
  QMatrix op = kronecker(a0.transpose(), QMatrix::identity(n2)) - kronecker(QMatrix::identity(n1), b0);
  std::vector<QMatrix> basis;
  for (const auto& v : nullspace(op)) {
    QMatrix s(n2, n1);
    for (std::size_t j = 0; j < n1; ++j)
      for (std::size_t i = 0; i < n2; ++i) s(i, j) = v[j * n2 + i];
    basis.push_back(std::move(s));
  }
  return basis;
}

CMatrix LaurentLogPoly::evaluate(Complex log_z) const {
  CMatrix out;
  for (const auto& [k, c] : terms) {
    CMatrix t = std::pow(log_z, k) * c;
    out = out.size() ? CMatrix(out + t) : t;
  }
  return out;
}

std::vector<LaurentLogPoly> solve_log_hom(const CMatrix& a1, const CMatrix& b1, int p, double tol) {
  std::vector<LaurentLogPoly> out;
  for (int k : log_degrees(a1, b1, p, tol)) {
    for (auto& s : solve_constant_hom(std::pow(static_cast<double>(p), k) * a1, b1, tol)) {
      out.push_back(LaurentLogPoly{{{k, std::move(s)}}});
    }
  }
  return out;
}

std::vector<ExactLaurentLogPoly> solve_log_hom(const QMatrix& a1, const QMatrix& b1, int p) {
  std::vector<ExactLaurentLogPoly> out;
  for (int k : log_degrees(to_complex(a1), to_complex(b1), p, kDunfordTolerance)) {
    GaussianRational pk = pow_int(p, k);
    for (auto& s : solve_constant_hom(pk * a1, b1)) out.push_back(ExactLaurentLogPoly{{{k, std::move(s)}}});
  }
  return out;
}

namespace {

GroupoidElement realize_at_1(const Provenance& prov, const CMatrix& a1, int p) {
  const CoverPoint z = *prov.point;
  switch (prov.kind) {
    case Provenance::Kind::UnipotentGen:
      return {FibreTag::omega1(z), FibreTag::omega1(z), dunford(a1).u, prov};
    case Provenance::Kind::CharGen:
      return {FibreTag::omega1(z), FibreTag::omega1(z), power_twist(a1, prov.character, 0.0, p), prov};
    case Provenance::Kind::Shift:
      return {FibreTag::omega1(z), FibreTag::omega1(z.phi(p)), a1, prov};
    default:
      throw MahlerError(ErrorKind::ValidationError, "not a generator at 1");
  }
}

Provenance at_1(Provenance::Kind kind, const CoverPoint& base, Character c = {}) {
  Provenance prov{kind, std::move(c), 0.0, Place::One, base};
  return prov;
}

}  // namespace

GroupoidElement realize(const Provenance& prov, const ConnectionBundle& b) {
  switch (prov.kind) {
    case Provenance::Kind::LocalTwist: {
      if (prov.side == Place::One) throw MahlerError(ErrorKind::PlaceMismatch, "local twists live at 0 and infinity");
      const bool inf = prov.side == Place::Infinity;
      FibreTag tag = inf ? FibreTag::omega_inf() : FibreTag::omega0();
      return {tag, tag, power_twist(inf ? b.ainf : b.a0, prov.character, prov.lambda, b.p()), prov};
    }
    case Provenance::Kind::Gamma0:
      return {FibreTag::omega0(), FibreTag::omega1(*prov.point), connection_M0(b, *prov.point).value, prov};
    case Provenance::Kind::GammaInf:
      return {FibreTag::omega_inf(), FibreTag::omega1(*prov.point), connection_Minf(b, *prov.point).value, prov};
    default:
      return realize_at_1(prov, b.a1, b.p());
  }
}

std::vector<GroupoidElement> local_generators_at_1(const CMatrix& a1, int p, const CoverPoint& base) {
  return {realize_at_1(at_1(Provenance::Kind::UnipotentGen, base), a1, p),
          realize_at_1(at_1(Provenance::Kind::CharGen, base, Character::gamma1()), a1, p),
          realize_at_1(at_1(Provenance::Kind::CharGen, base, Character::gamma2()), a1, p)};
}

std::vector<GroupoidElement> density_generators(const ConnectionBundle& b, const std::vector<CoverPoint>& samples0,
                                                const std::vector<CoverPoint>& samples_inf,
                                                const std::vector<Twist>& twists, const GeneratorOptions& opt) {
  for (std::size_t i = 0; i < samples0.size(); ++i) {
    if (!samples0[i].in_sigma0() || orbit_membership(b.e0, samples0[i])) {
      throw MahlerError(ErrorKind::SampleInSingularLocus, "sample at 0 is not admissible", static_cast<long>(i));
    }
  }
  for (std::size_t i = 0; i < samples_inf.size(); ++i) {
    if (!samples_inf[i].in_sigma_inf() || orbit_membership(b.einf, samples_inf[i])) {
      throw MahlerError(ErrorKind::SampleInSingularLocus, "sample at infinity is not admissible",
                        static_cast<long>(samples0.size() + i));
    }
  }
  std::vector<GroupoidElement> out;
  for (Place side : {Place::Zero, Place::Infinity}) {
    for (const auto& t : twists) {
      out.push_back(realize({Provenance::Kind::LocalTwist, t.character, t.lambda, side, std::nullopt}, b));
    }
  }
  for (auto& g : local_generators_at_1(b.a1, b.p(), opt.base)) out.push_back(std::move(g));
  for (const auto& z : samples0) out.push_back(realize({Provenance::Kind::Gamma0, {}, 0.0, Place::Zero, z}, b));
  for (const auto& z : samples_inf) {
    out.push_back(realize({Provenance::Kind::GammaInf, {}, 0.0, Place::Infinity, z}, b));
  }
  out.push_back(realize(at_1(Provenance::Kind::Shift, opt.base), b));
  return out;
}

MorphismTriple identity_morphism(std::size_t n) {
  const auto k = static_cast<Index>(n);
  return {eye(k), eye(k), [k](const CoverPoint&) { return eye(k); }};
}

MorphismTriple morphism_from_rational(const ConnectionBundle& x, const ConnectionBundle& y, const RatMatrix& r,
                                      const CoverPoint& probe0, const CoverPoint& probe_inf) {
  if (x.p() != y.p()) throw MahlerError(ErrorKind::ValidationError, "bundles have different p");
  if (r.rows() != y.dim() || r.cols() != x.dim()) {
    throw MahlerError(ErrorKind::DimensionMismatch, "morphism shape does not match the bundles");
  }
  if (!(mahler_substitute(r, x.p()) * x.system.matrix() == y.system.matrix() * r)) {
    throw MahlerError(ErrorKind::ValidationError, "phi_p(R) A != B R");
  }
  auto at0 = [&](const ConnectionBundle& b) { return eval_F0(b.system, b.l0, probe0.project(), b.eval).value; };
  auto atinf = [&](const ConnectionBundle& b) {
    return eval_Finf(b.system, b.linf, probe_inf.project(), b.eval).value;
  };
  CMatrix s0 = at0(y).inverse() * evaluate(r, probe0.project()) * at0(x);
  CMatrix sinf = atinf(y).inverse() * evaluate(r, probe_inf.project()) * atinf(x);
  auto xs = std::make_shared<ConnectionBundle>(x);
  auto ys = std::make_shared<ConnectionBundle>(y);
  auto s1 = [xs, ys, r](const CoverPoint& z) {
    CMatrix fx = eval_F1(xs->system, xs->l1, z, xs->eval).value;
    CMatrix fy = eval_F1(ys->system, ys->l1, z, ys->eval).value;
    return CMatrix(fy.inverse() * evaluate(r, z.project()) * fx);
  };
  return {s0, sinf, s1};
}

double verify_naturality(const GroupoidElement& g, const ConnectionBundle& x, const ConnectionBundle& y,
                         const MorphismTriple& m) {
  auto s_at = [&](const FibreTag& t) -> CMatrix {
    switch (t.kind) {
      case FibreTag::Kind::Omega0: return m.s0;
      case FibreTag::Kind::OmegaInf: return m.sinf;
      case FibreTag::Kind::Omega1: return m.s1(*t.point);
    }
    return m.s0;
  };
  GroupoidElement gx = realize(g.provenance, x);
  GroupoidElement gy = realize(g.provenance, y);
  return norm1(s_at(gx.target) * gx.matrix - gy.matrix * s_at(gx.source));
}

}  // namespace mahler
