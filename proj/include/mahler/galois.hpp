#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "mahler/cover.hpp"

namespace mahler {

constexpr double kDunfordTolerance = 1e-9;

/// A = s * u with s semisimple, u unipotent, su = us. The generalized
/// eigenspaces are kept: s = basis * diag(eigenvalues repeated by
/// multiplicity) * basis^{-1}.
struct DunfordPair {
  CMatrix s;
  CMatrix u;
  std::vector<Complex> eigenvalues;
  std::vector<int> multiplicities;
  CMatrix basis;
};

/// Numeric decomposition from clustered eigenvalues and kernels of
/// (A - lambda)^m. Throws SingularMatrix for singular A and IllConditioned
/// when the generalized eigenspaces cannot be separated.
DunfordPair dunford(const CMatrix& a, double tol = kDunfordTolerance);

struct ExactDunford {
  QMatrix s;
  QMatrix u;
};
/// Exact decomposition when every eigenvalue lies in Q(i); nullopt otherwise.
std::optional<ExactDunford> dunford_exact(const QMatrix& a);

/// Group homomorphism C* -> C*, known through its values where needed.
struct Character {
  enum class Kind { Identity, Gamma1, Gamma2, EigenvalueMap, Product };
  Kind kind = Kind::Identity;
  std::vector<std::pair<Complex, Complex>> table;  // EigenvalueMap
  std::vector<Character> factors;                  // Product

  static Character identity() { return {}; }
  static Character gamma1() { return {Kind::Gamma1, {}, {}}; }
  static Character gamma2() { return {Kind::Gamma2, {}, {}}; }
  static Character eigenvalue_map(std::vector<std::pair<Complex, Complex>> t) {
    return {Kind::EigenvalueMap, std::move(t), {}};
  }
  friend Character operator*(const Character& a, const Character& b) { return {Kind::Product, {}, {a, b}}; }
};

/// z = u p^x with |u| = 1: gamma1 -> u, gamma2 -> e^{2 pi i x}.
/// Throws UnmappedEigenvalue for table misses and ValidationError for z = 0.
Complex apply_character(const Character& c, Complex z, int p, double tol = kDunfordTolerance);

/// gamma(A_s) A_u^lambda with the finite binomial series for A_u^lambda.
CMatrix power_twist(const CMatrix& a, const Character& c, Complex lambda, int p);
CMatrix power_twist(const DunfordPair& d, const Character& c, Complex lambda, int p);
/// A_u^lambda alone.
CMatrix unipotent_power(const CMatrix& u, Complex lambda);

/// Basis of {S : S A0 = B0 S}; A0 is n1 x n1, B0 is n2 x n2, S is n2 x n1.
std::vector<CMatrix> solve_constant_hom(const CMatrix& a0, const CMatrix& b0, double tol = kDunfordTolerance);
std::vector<QMatrix> solve_constant_hom(const QMatrix& a0, const QMatrix& b0);

/// Finite sum of matrix coefficients times powers (possibly negative) of
/// the cover logarithm.
struct LaurentLogPoly {
  std::map<int, CMatrix> terms;
  CMatrix evaluate(Complex log_z) const;
};
struct ExactLaurentLogPoly {
  std::map<int, QMatrix> terms;
};

/// Solutions of phi_p(S) A1 = B1 S among Laurent polynomials in log: each
/// degree k contributes solve_constant_hom(p^k A1, B1).
std::vector<LaurentLogPoly> solve_log_hom(const CMatrix& a1, const CMatrix& b1, int p,
                                          double tol = kDunfordTolerance);
std::vector<ExactLaurentLogPoly> solve_log_hom(const QMatrix& a1, const QMatrix& b1, int p);

struct FibreTag {
  enum class Kind { Omega0, OmegaInf, Omega1 };
  Kind kind;
  std::optional<CoverPoint> point;  // Omega1 only

  static FibreTag omega0() { return {Kind::Omega0, std::nullopt}; }
  static FibreTag omega_inf() { return {Kind::OmegaInf, std::nullopt}; }
  static FibreTag omega1(const CoverPoint& z) { return {Kind::Omega1, z}; }
};

struct Provenance {
  enum class Kind { LocalTwist, Gamma0, GammaInf, UnipotentGen, CharGen, Shift };
  Kind kind;
  Character character;          // LocalTwist, CharGen
  Complex lambda{0.0, 0.0};     // LocalTwist
  Place side = Place::Zero;     // LocalTwist: Zero or Infinity
  std::optional<CoverPoint> point;  // Gamma0, GammaInf, Shift and the at-1 generators
};

struct GroupoidElement {
  FibreTag source;
  FibreTag target;
  CMatrix matrix;
  Provenance provenance;
};

/// Evaluates the element described by `prov` in a bundle.
GroupoidElement realize(const Provenance& prov, const ConnectionBundle& b);

/// A1_u, gamma1(A1_s), gamma2(A1_s), acting on omega1 at `base`.
std::vector<GroupoidElement> local_generators_at_1(const CMatrix& a1, int p, const CoverPoint& base);

struct Twist {
  Character character;
  Complex lambda;
};

struct GeneratorOptions {
  CoverPoint base{0.5, 0.0};
};

/// Local twists at 0 and infinity, the three generators at 1, Gamma_0 and
/// Gamma_inf for every sample and the shift A1 : omega1(base) ->
/// omega1(phi base). Throws SampleInSingularLocus(index); indices of
/// infinity samples are offset by the number of samples at 0.
std::vector<GroupoidElement> density_generators(const ConnectionBundle& b, const std::vector<CoverPoint>& samples0,
                                                const std::vector<CoverPoint>& samples_inf,
                                                const std::vector<Twist>& twists, const GeneratorOptions& opt = {});

/// (S0, S1, Sinf) from bundle X to bundle Y, with S1 a function on the cover.
struct MorphismTriple {
  CMatrix s0;
  CMatrix sinf;
  std::function<CMatrix(const CoverPoint&)> s1;
};

MorphismTriple identity_morphism(std::size_t n);
/// Triple induced by a rational R with phi_p(R) A = B R (A of X, B of Y):
/// S0 = F0_Y^{-1} R F0_X at `probe0`, likewise at infinity, and
/// S1(z) = F1_Y(z)^{-1} R(pi z) F1_X(z). Throws ValidationError when R is
/// not a morphism.
MorphismTriple morphism_from_rational(const ConnectionBundle& x, const ConnectionBundle& y, const RatMatrix& r,
                                      const CoverPoint& probe0 = CoverPoint(0.3, 0.7),
                                      const CoverPoint& probe_inf = CoverPoint(3.0, 0.7));

/// ||S_target g_X - g_Y S_source|| with g realized in both bundles.
double verify_naturality(const GroupoidElement& g, const ConnectionBundle& x, const ConnectionBundle& y,
                         const MorphismTriple& m);

}  // namespace mahler
