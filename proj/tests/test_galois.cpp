#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mahler/galois.hpp"
#include "support.hpp"

using namespace mt;

namespace {
MahlerSystem running() { return MahlerSystem(2, rm({{"(2*z+1)/(z+2)"}})); }

double rel(const CMatrix& a, const CMatrix& b) { return dist(a, b) / std::max(1.0, b.cwiseAbs().maxCoeff()); }

CMatrix mat_pow(const CMatrix& a, int k) {
  CMatrix out = CMatrix::Identity(a.rows(), a.cols());
  for (int i = 0; i < k; ++i) out = out * a;
  return out;
}

void check_dunford(const CMatrix& a, const DunfordPair& d) {
  const auto n = a.rows();
  CHECK(rel(d.s * d.u, a) < 1e-10);
  CHECK(rel(d.s * d.u, d.u * d.s) < 1e-10);
  CHECK(mat_pow(d.u - CMatrix::Identity(n, n), static_cast<int>(n)).cwiseAbs().maxCoeff() < 1e-10);
  Eigen::JacobiSVD<CMatrix> svd(d.basis);
  CHECK(std::isfinite(svd.singularValues()(0) / svd.singularValues()(n - 1)));
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const MahlerError& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::ValidationError;
}

// kernel dimension of S -> S A - B S over Q(i), independent of the solver
std::size_t brute_force_dim(const QMatrix& a, const QMatrix& b) {
  const std::size_t n1 = a.rows(), n2 = b.rows();
  QMatrix op(n1 * n2, n1 * n2);
  for (std::size_t i = 0; i < n2; ++i)
    for (std::size_t j = 0; j < n1; ++j) {
      // image of the unit matrix E_ij
      QMatrix e(n2, n1);
      e(i, j) = 1;
      QMatrix img = e * a - b * e;
      for (std::size_t r = 0; r < n2; ++r)
        for (std::size_t c = 0; c < n1; ++c) op(r * n1 + c, i * n1 + j) = img(r, c);
    }
  return n1 * n2 - rank(op);
}
}  // namespace

TEST_SUITE("galois") {

TEST_CASE("dunford examples") {
  CMatrix d23 = cm({{2, 0}, {0, 3}});
  DunfordPair a = dunford(d23);
  CHECK(rel(a.s, d23) < 1e-14);
  CHECK(rel(a.u, CMatrix::Identity(2, 2)) < 1e-14);

  CMatrix j = cm({{2, 1}, {0, 2}});
  DunfordPair b = dunford(j);
  CHECK(rel(b.s, cm({{2, 0}, {0, 2}})) < 1e-12);
  CHECK(rel(b.u, cm({{1, 0.5}, {0, 1}})) < 1e-12);
  check_dunford(j, b);

  DunfordPair c = dunford(CMatrix::Identity(3, 3));
  CHECK(rel(c.s, CMatrix::Identity(3, 3)) < 1e-14);
  CHECK(rel(c.u, CMatrix::Identity(3, 3)) < 1e-14);

  CHECK(kind_of([] { dunford(cm({{1, 0}, {0, 0}})); }) == ErrorKind::SingularMatrix);
  // distinct eigenvalues with almost parallel eigenvectors
  CHECK(kind_of([] { dunford(cm({{1, 1e6}, {0, 1.0 + 1e-4}})); }) == ErrorKind::IllConditioned);
}

TEST_CASE("exact dunford") {
  auto d = dunford_exact(qm({{2, 1}, {0, 2}}));
  REQUIRE(d.has_value());
  CHECK(d->s == qm({{2, 0}, {0, 2}}));
  QMatrix u(2, 2);
  u(0, 0) = 1;
  u(1, 1) = 1;
  u(0, 1) = GaussianRational::fraction(1, 2);
  CHECK(d->u == u);
  CHECK(!dunford_exact(qm({{0, -2}, {1, 0}})).has_value());  // +-i sqrt 2

  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    std::size_t n = static_cast<std::size_t>(rng.integer(2, 4));
    QMatrix a = random_jordan(rng, n);
    auto e = dunford_exact(a);
    REQUIRE(e.has_value());
    CHECK(e->s * e->u == a);
    CHECK(e->s * e->u == e->u * e->s);
    CHECK(power(e->u - QMatrix::identity(n), static_cast<unsigned>(n)).is_zero());
    DunfordPair d = dunford(to_complex(a));
    CHECK(rel(d.s, to_complex(e->s)) < 1e-9);
  }
}

TEST_CASE("dunford on random Jordan matrices") {
  Rng rng(17);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = static_cast<std::size_t>(rng.integer(1, 4));
    CMatrix a = to_complex(random_jordan(rng, n));
    check_dunford(a, dunford(a));
  }
}

TEST_CASE("characters") {
  const int p = 2;
  CHECK(std::abs(apply_character(Character::gamma1(), 2.0, p) - 1.0) < 1e-12);
  CHECK(std::abs(apply_character(Character::gamma2(), 2.0, p) - 1.0) < 1e-12);
  CHECK(std::abs(apply_character(Character::gamma1(), {0, 2}, p) - Complex(0, 1)) < 1e-12);
  CHECK(std::abs(apply_character(Character::gamma2(), {0, 2}, p) - 1.0) < 1e-12);
  CHECK(std::abs(apply_character(Character::gamma2(), std::sqrt(2.0), p) + 1.0) < 1e-12);
  for (int q : {3, 5}) {
    CHECK(std::abs(apply_character(Character::gamma1(), q, q) - 1.0) < 1e-12);
    CHECK(std::abs(apply_character(Character::gamma2(), q, q) - 1.0) < 1e-12);
  }
  Character m = Character::eigenvalue_map({{2.0, 5.0}, {{0, 1}, -1.0}});
  CHECK(apply_character(m, {0, 1}, p) == Complex(-1.0));
  CHECK(kind_of([&] { apply_character(m, 3.0, p); }) == ErrorKind::UnmappedEigenvalue);
  CHECK(kind_of([] { apply_character(Character::gamma1(), 0.0, 2); }) == ErrorKind::ValidationError);

  Rng rng(8);
  for (int t = 0; t < 1000; ++t) {
    Complex z = std::polar(rng.real(0.05, 20.0), rng.real(-3.0, 3.0));
    Complex w = std::polar(rng.real(0.05, 20.0), rng.real(-3.0, 3.0));
    for (const Character& c : {Character::gamma1(), Character::gamma2()}) {
      CHECK(std::abs(apply_character(c, z * w, p) - apply_character(c, z, p) * apply_character(c, w, p)) < 1e-12);
    }
  }
}

TEST_CASE("power twists") {
  const int p = 2;
  CMatrix j = cm({{2, 1}, {0, 2}});
  CHECK(rel(power_twist(j, Character::identity(), 1.0, p), j) < 1e-12);
  CHECK(rel(power_twist(j, Character::eigenvalue_map({{2.0, 1.0}}), 0.0, p), CMatrix::Identity(2, 2)) < 1e-12);
  // A^2 A_s^{-1}
  CHECK(rel(power_twist(j, Character::identity(), 2.0, p), cm({{2, 2}, {0, 2}})) < 1e-12);

  Rng rng(21);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = static_cast<std::size_t>(rng.integer(1, 4));
    CMatrix a = to_complex(random_jordan(rng, n));
    DunfordPair d = dunford(a);
    CHECK(rel(power_twist(d, Character::identity(), 1.0, p), a) < 1e-12);
    Complex l1(rng.real(-2, 2), rng.real(-2, 2)), l2(rng.real(-2, 2), rng.real(-2, 2));
    Character g = Character::gamma1(), h = Character::gamma2();
    CMatrix lhs = power_twist(d, g * h, l1 + l2, p);
    CMatrix rhs = power_twist(d, g, l1, p) * power_twist(d, h, l2, p);
    CHECK(rel(lhs, rhs) < 1e-10);
    int k = static_cast<int>(rng.integer(0, 5));
    CHECK(rel(unipotent_power(d.u, static_cast<double>(k)), mat_pow(d.u, k)) < 1e-10);
  }
}

TEST_CASE("local generators at 1") {
  const CoverPoint base(0.5, 0.0);
  for (const auto& g : local_generators_at_1(CMatrix::Identity(2, 2), 2, base)) {
    CHECK(rel(g.matrix, CMatrix::Identity(2, 2)) < 1e-14);
  }
  auto j = local_generators_at_1(cm({{2, 1}, {0, 2}}), 2, base);
  REQUIRE(j.size() == 3);
  CHECK(rel(j[0].matrix, cm({{1, 0.5}, {0, 1}})) < 1e-12);
  CHECK(rel(j[1].matrix, CMatrix::Identity(2, 2)) < 1e-12);
  CHECK(rel(j[2].matrix, CMatrix::Identity(2, 2)) < 1e-12);
  CHECK(j[0].source.kind == FibreTag::Kind::Omega1);

  auto d = local_generators_at_1(cm({{3, 0}, {0, {0, 2}}}), 2, base);
  CHECK(rel(d[1].matrix, cm({{1, 0}, {0, {0, 1}}})) < 1e-12);
  Complex e = std::polar(1.0, 2 * std::numbers::pi * std::log2(3.0));
  CHECK(rel(d[2].matrix, cm({{e, 0}, {0, 1}})) < 1e-12);
}

TEST_CASE("constant homs") {
  CHECK(solve_constant_hom(CMatrix(CMatrix::Identity(2, 2)), CMatrix(CMatrix::Identity(2, 2))).size() == 4);
  auto b = solve_constant_hom(cm({{2, 0}, {0, 3}}), cm({{3, 0}, {0, 2}}));
  CHECK(b.size() == 2);
  for (const auto& s : b) {
    CHECK(std::abs(s(0, 0)) < 1e-12);
    CHECK(std::abs(s(1, 1)) < 1e-12);
  }
  CHECK(solve_constant_hom(cm({{2}}), cm({{3}})).empty());
  CHECK(solve_constant_hom(qm({{2, 0}, {0, 3}}), qm({{3, 0}, {0, 2}})).size() == 2);

  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    std::size_t n1 = static_cast<std::size_t>(rng.integer(1, 3)), n2 = static_cast<std::size_t>(rng.integer(1, 3));
    QMatrix a = random_jordan(rng, n1), bq = random_jordan(rng, n2);
    std::size_t want = brute_force_dim(a, bq);
    CHECK(solve_constant_hom(a, bq).size() == want);
    CHECK(solve_constant_hom(to_complex(a), to_complex(bq)).size() == want);
    for (const auto& s : solve_constant_hom(a, bq)) CHECK(s * a == bq * s);
  }
}

TEST_CASE("twists intertwine") {
  Rng rng(9);
  int nonempty = 0;
  for (int t = 0; t < 40; ++t) {
    std::size_t n = static_cast<std::size_t>(rng.integer(1, 3));
    QMatrix a = random_jordan(rng, n), b = random_jordan(rng, n);
    if (t % 2 == 0) {
      // shared spectrum: conjugate of a
      QMatrix q = rng.qmatrix(n, n, 2);
      if (!determinant(q).is_zero()) b = q * a * inverse(q);
    }
    CMatrix ac = to_complex(a), bc = to_complex(b);
    auto basis = solve_constant_hom(ac, bc);
    nonempty += !basis.empty();
    Complex lambda(rng.real(-2, 2), rng.real(-2, 2));
    for (const Character& g : {Character::identity(), Character::gamma1(), Character::gamma2()}) {
      CMatrix ta = power_twist(ac, g, lambda, 2), tb = power_twist(bc, g, lambda, 2);
      for (const auto& s : basis) CHECK(dist(s * ta, tb * s) < 1e-10);
    }
  }
  CHECK(nonempty >= 20);
}

TEST_CASE("log homs") {
  auto one = solve_log_hom(qm({{1}}), qm({{1}}), 2);
  REQUIRE(one.size() == 1);
  CHECK(one[0].terms.begin()->first == 0);
  auto lg = solve_log_hom(qm({{1}}), qm({{2}}), 2);
  REQUIRE(lg.size() == 1);
  CHECK(lg[0].terms.begin()->first == 1);
  CHECK(solve_log_hom(qm({{2}}), qm({{3}}), 2).empty());
  CHECK(solve_log_hom(cm({{2}}), cm({{3}}), 2).empty());
  auto neg = solve_log_hom(qm({{4, 0}, {0, 1}}), qm({{1}}), 2);
  REQUIRE(neg.size() == 2);
  CHECK(neg[0].terms.begin()->first == -2);

  Rng rng(12);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = static_cast<std::size_t>(rng.integer(1, 3));
    QMatrix a = random_jordan(rng, n), b = random_jordan(rng, n);
    for (const auto& s : solve_log_hom(a, b, 2)) {
      for (const auto& [k, c] : s.terms) {
        GaussianRational pk = 1;
        for (int i = 0; i < std::abs(k); ++i) pk *= 2;
        if (k < 0) pk = GaussianRational(1) / pk;
        CHECK(c * (pk * a) == b * c);
      }
    }
    // numeric solutions satisfy phi(S) A1 = B1 S on the cover
    CoverPoint z(rng.real(0.2, 3.0), rng.real(-2, 2));
    for (const auto& s : solve_log_hom(to_complex(a), to_complex(b), 2)) {
      CHECK(dist(s.evaluate(z.phi(2).log()) * to_complex(a), to_complex(b) * s.evaluate(z.log())) < 1e-9);
    }
  }
}

TEST_CASE("density generators on the running example") {
  ConnectionBundle b = make_bundle(running());
  std::vector<Twist> twists{{Character::gamma1(), 0.0}, {Character::gamma2(), 0.0}, {Character::identity(), 1.0}};
  auto gens = density_generators(b, {CoverPoint(0.5, 0.0)}, {CoverPoint(2.0, 0.0)}, twists);
  CHECK(gens.size() == 12);
  MorphismTriple id = identity_morphism(1);
  for (const auto& g : gens) {
    CHECK(std::abs(g.matrix.determinant()) > 1e-12);
    CHECK(verify_naturality(g, b, b, id) < 1e-10);
    if (g.provenance.kind == Provenance::Kind::Gamma0) {
      CHECK(g.source.kind == FibreTag::Kind::Omega0);
      CHECK(g.target.kind == FibreTag::Kind::Omega1);
    }
  }
  Rng rng(1);
  for (int i = 0; i < 5; ++i) {
    CoverPoint z(rng.real(0.2, 0.9), rng.real(-3, 3));
    CMatrix g = connection_M0(b, z).value;
    CMatrix gphi = connection_M0(b, z.phi(2)).value;
    CHECK(dist(gphi, b.a1 * g * b.a0.inverse()) < 1e-8);
  }
  try {
    density_generators(b, {CoverPoint(0.6, 0.1), CoverPoint(0.25, 0.0)}, {}, twists);
    FAIL("expected SampleInSingularLocus");
  } catch (const MahlerError& e) {
    CHECK(e.kind() == ErrorKind::SampleInSingularLocus);
    CHECK(e.index() == std::optional<long>(1));
  }

  MahlerSystem c(2, rm({{"1", "0"}, {"0", "1"}}));
  ConnectionBundle cb = make_bundle(c);
  for (const auto& g : density_generators(cb, {CoverPoint(0.4, 1.0)}, {CoverPoint(3.0, -1.0)}, twists)) {
    CHECK(rel(g.matrix, CMatrix::Identity(2, 2)) < 1e-12);
  }
}

TEST_CASE("naturality for morphisms between bundles") {
  std::vector<Twist> twists{{Character::gamma1(), 0.0}, {Character::gamma2(), 0.0}, {Character::identity(), 1.0},
                            {Character::gamma1() * Character::gamma2(), {0.5, 1.0}}};
  std::vector<CoverPoint> s0{CoverPoint(0.5, 0.0), CoverPoint(0.7, 2.0)};
  std::vector<CoverPoint> sinf{CoverPoint(2.0, 0.0), CoverPoint(1.6, -1.0)};
  MahlerSystem x = running();
  ConnectionBundle bx = make_bundle(x);

  SUBCASE("rational gauge") {
    RatMatrix t = rm({{"(z+3)/(z+5)"}});
    ConnectionBundle by = make_bundle(gauge_transform(x, t));
    MorphismTriple m = morphism_from_rational(bx, by, inverse(t));
    // the constant components do not depend on the probe
    MorphismTriple m2 = morphism_from_rational(bx, by, inverse(t), CoverPoint(0.6, -2.0), CoverPoint(5.0, 1.0));
    CHECK(dist(m.s0, m2.s0) < 1e-10);
    CHECK(dist(m.sinf, m2.sinf) < 1e-10);
    for (const auto& g : density_generators(bx, s0, sinf, twists)) CHECK(verify_naturality(g, bx, by, m) < 1e-8);
  }
  SUBCASE("direct sum inclusion") {
    RatMatrix a(2, 2);
    a(0, 0) = x.matrix()(0, 0);
    a(1, 1) = rf("(3*z+1)/(z+3)");
    ConnectionBundle by = make_bundle(MahlerSystem(2, a));
    MorphismTriple m = morphism_from_rational(bx, by, rm({{"1"}, {"0"}}));
    for (const auto& g : density_generators(bx, s0, sinf, twists)) CHECK(verify_naturality(g, bx, by, m) < 1e-8);
  }
  SUBCASE("not a morphism") {
    ConnectionBundle by = make_bundle(MahlerSystem(2, rm({{"(3*z+1)/(z+3)"}})));
    CHECK(kind_of([&] { morphism_from_rational(bx, by, rm({{"1"}})); }) == ErrorKind::ValidationError);
  }
}

TEST_CASE("connection matrices are compatible with tensor products") {
  MahlerSystem x = running();
  MahlerSystem y(2, rm({{"(3*z+1)/(z+3)"}}));
  ConnectionBundle bx = make_bundle(x), by = make_bundle(y), bxy = make_bundle(kronecker(x, y));
  for (const CoverPoint& z : {CoverPoint(0.6, 0.4), CoverPoint(0.3, -2.0)}) {
    CMatrix want = kronecker(connection_M0(bx, z).value, connection_M0(by, z).value);
    CHECK(dist(connection_M0(bxy, z).value, want) < 1e-9);
  }
  CoverPoint w(2.5, 1.0);
  CHECK(dist(connection_Minf(bxy, w).value, kronecker(connection_Minf(bx, w).value, connection_Minf(by, w).value)) <
        1e-9);
}

}  // TEST_SUITE
