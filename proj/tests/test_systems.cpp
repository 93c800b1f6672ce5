#include "doctest.h"
#include "mahler/systems.hpp"
#include "mahler/series.hpp"
#include "support.hpp"

using namespace mt;

TEST_SUITE("systems") {

TEST_CASE("companion_system") {
  MahlerEquation eq(2, {rf("-z"), rf("-1"), rf("1")});
  MahlerSystem s = companion_system(eq);
  CHECK(s.matrix() == rm({{"0", "1"}, {"z", "1"}}));
  MahlerSystem one = companion_system(MahlerEquation(3, {rf("z+1"), rf("2*z")}));
  CHECK(one.matrix() == rm({{"-(z+1)/(2*z)"}}));
  try {
    MahlerEquation(2, {rf("0"), rf("1")});
    FAIL("no throw");
  } catch (const MahlerError& e) {
    CHECK(e.kind() == ErrorKind::DegenerateEquation);
  }
  CHECK_THROWS_AS(MahlerEquation(1, {rf("1"), rf("1")}), MahlerError);
}

TEST_CASE("companion solutions project onto equation solutions") {
  // f(z^4) - f(z^2) - z f(z) = 0; Y = (f, f(z^2)) solves phi(Y) = A Y.
  // Compare the solution spaces mod z^17 by brute force: unknown coefficients
  // c_0..c_16, linear conditions from each equation.
  const int N = 16;
  const int p = 2;
  MahlerEquation eq(p, {rf("-z"), rf("-1"), rf("1")});
  MahlerSystem s = companion_system(eq);
  // Equation: conditions on f mod z^{N+1}.
  auto eq_op = [&](const std::vector<GaussianRational>& f) {
    std::vector<GaussianRational> out(N + 1);
    for (int k = 0; k <= N; ++k) {
      GaussianRational v = 0;
      if (k % 4 == 0) v += f[static_cast<std::size_t>(k / 4)];
      if (k % 2 == 0) v -= f[static_cast<std::size_t>(k / 2)];
      if (k >= 1) v -= f[static_cast<std::size_t>(k - 1)];
      out[static_cast<std::size_t>(k)] = v;
    }
    return out;
  };
  QMatrix eq_mat(N + 1, N + 1);
  for (int j = 0; j <= N; ++j) {
    std::vector<GaussianRational> e(N + 1);
    e[static_cast<std::size_t>(j)] = 1;
    auto col = eq_op(e);
    for (int k = 0; k <= N; ++k) eq_mat(static_cast<std::size_t>(k), static_cast<std::size_t>(j)) = col[static_cast<std::size_t>(k)];
  }
  auto eq_ker = nullspace(eq_mat);
  // System: Y = (y1, y2) with y(z^2) - A y = 0 mod z^{N+1}.
  SeriesMatrix a = expand_at(s.matrix(), Place::Zero, N);
  const std::size_t dim = 2 * (N + 1);
  QMatrix sys_mat(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<QMatrix> y(N + 1, QMatrix(2, 1));
    y[j % (N + 1)](j / (N + 1), 0) = 1;
    SeriesMatrix ys(Place::Zero, y);
    SeriesMatrix r = ys.phi(p) - a * ys;
    for (int k = 0; k <= N; ++k)
      for (std::size_t c = 0; c < 2; ++c)
        sys_mat(c * (N + 1) + static_cast<std::size_t>(k), j) = r.exact_coeffs()[static_cast<std::size_t>(k)](c, 0);
  }
  auto sys_ker = nullspace(sys_mat);
  // the first coordinate of every system solution solves the equation
  for (const auto& v : sys_ker) {
    std::vector<GaussianRational> f(v.begin(), v.begin() + N + 1);
    for (const auto& x : eq_op(f)) CHECK(x.is_zero());
  }
  // projection is a bijection between the truncated solution spaces
  QMatrix proj(sys_ker.size(), static_cast<std::size_t>(N + 1));
  for (std::size_t i = 0; i < sys_ker.size(); ++i)
    for (int k = 0; k <= N; ++k) proj(i, static_cast<std::size_t>(k)) = sys_ker[i][static_cast<std::size_t>(k)];
  CHECK(sys_ker.size() == eq_ker.size());
  CHECK(rank(proj) == sys_ker.size());
  CHECK(rank(proj) == eq_ker.size());
}

TEST_CASE("kronecker and dual") {
  RatMatrix b = rm({{"z", "1"}, {"2", "1/(z+1)"}});
  RatMatrix blk = kronecker(RatMatrix::identity(2), b);
  CHECK(blk(0, 0) == b(0, 0));
  CHECK(blk(3, 3) == b(1, 1));
  CHECK(blk(0, 2).is_zero());
  CHECK(kronecker(rm({{"2"}}), rm({{"3"}})) == rm({{"6"}}));
  Rng rng(21);
  for (int t = 0; t < 10; ++t) {
    RatMatrix a = rng.ratmatrix(2, 1, 4), c = rng.ratmatrix(2, 1, 4), x = rng.ratmatrix(2, 1, 4),
              d = rng.ratmatrix(2, 1, 4);
    CHECK(kronecker(a, x) * kronecker(c, d) == kronecker(a * c, x * d));
  }
  CHECK(dual_system(MahlerSystem(2, RatMatrix::identity(2))).matrix() == RatMatrix::identity(2));
  CHECK(dual_system(MahlerSystem(2, rm({{"z+1"}}))).matrix() == rm({{"1/(z+1)"}}));
  for (int t = 0; t < 10; ++t) {
    RatMatrix a = rng.ratmatrix(2, 1, 4);
    if (determinant(a).is_zero()) continue;
    MahlerSystem s(3, a);
    CHECK(dual_system(dual_system(s)) == s);
  }
}

TEST_CASE("gauge_transform") {
  MahlerSystem s(2, rm({{"1"}}));
  CHECK(gauge_transform(s, rm({{"1"}})) == s);
  CHECK(gauge_transform(s, rm({{"z"}})).matrix() == rm({{"1/z"}}));
  MahlerSystem r(2, rm({{"z", "1"}, {"1/(z-2)", "3"}}));
  RatMatrix t = rm({{"1", "z"}, {"0", "z+1"}});
  CHECK(gauge_transform(gauge_transform(r, t), inverse(t)) == r);
  try {
    gauge_transform(r, rm({{"1", "1"}, {"1", "1"}}));
    FAIL("no throw");
  } catch (const MahlerError& e) {
    CHECK(e.kind() == ErrorKind::SingularGauge);
  }
}

TEST_CASE("classify_fuchsian") {
  MahlerSystem run(2, rm({{"(2*z+1)/(z+2)"}}));
  const GaussianRational want[] = {GaussianRational::fraction(1, 2), GaussianRational(1), GaussianRational(2)};
  int idx = 0;
  for (Place pl : {Place::Zero, Place::One, Place::Infinity}) {
    FuchsianVerdict v = classify_fuchsian(run, pl);
    CHECK(v.fuchsian);
    REQUIRE(v.value.has_value());
    CHECK((*v.value)(0, 0) == want[idx]);
    CHECK(std::abs(run.matrix()(0, 0)(pl == Place::Infinity ? Complex(1e8) : (pl == Place::One ? 1.0 : 0.0)) -
                   want[idx].to_complex()) < 1e-7);
    ++idx;
  }
  FuchsianVerdict pole = classify_fuchsian(MahlerSystem(2, rm({{"1/(1-z)"}})), Place::One);
  CHECK_FALSE(pole.fuchsian);
  CHECK(pole.pole_entries.size() == 1);
  FuchsianVerdict sing = classify_fuchsian(MahlerSystem(2, rm({{"z"}})), Place::Zero);
  CHECK_FALSE(sing.fuchsian);
  CHECK(sing.pole_entries.empty());
  CHECK(sing.reason.find("singular") != std::string::npos);
}

TEST_CASE("Fuchsianity is invariant under regular gauges") {
  Rng rng(31);
  int done = 0;
  while (done < 20) {
    RatMatrix a = rng.ratmatrix(2, 1, 4);
    RatMatrix t(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) t(i, j) = RatFun(rng.poly(1, 3));
    if (determinant(a).is_zero() || determinant(t).is_zero()) continue;
    MahlerSystem s(2, a);
    for (Place pl : {Place::Zero, Place::One, Place::Infinity}) {
      // regular and invertible at the place, and so is phi_p(T)
      if (!analytic_at(t, pl) || determinant(value_at(t, pl)).is_zero()) continue;
      CHECK(classify_fuchsian(gauge_transform(s, t), pl).fuchsian == classify_fuchsian(s, pl).fuchsian);
    }
    ++done;
  }
}

TEST_CASE("certify_regular_singular") {
  MahlerSystem run(2, rm({{"(2*z+1)/(z+2)"}}));
  Certification c = certify_regular_singular(run, Place::Zero, RatMatrix::identity(1));
  CHECK(c.certified);
  CHECK(c.gauged == run);
  Certification r1 = certify_regular_singular(MahlerSystem(2, rm({{"1/z"}})), Place::Zero, rm({{"z"}}));
  CHECK_FALSE(r1.certified);
  CHECK(r1.gauged.matrix() == rm({{"1/z^2"}}));
  Certification r2 = certify_regular_singular(MahlerSystem(2, rm({{"z"}})), Place::Zero, rm({{"1/z"}}));
  CHECK_FALSE(r2.certified);
  CHECK(r2.gauged.matrix() == rm({{"z^2"}}));
  // A = [z], p = 2, T = [z^k] gives B = [z^{1-k}]: certified exactly for k = 1.
  for (int k = -4; k <= 4; ++k) {
    RatMatrix t(1, 1);
    t(0, 0) = RatFun(Poly::monomial(1, std::abs(k)));
    if (k < 0) t(0, 0) = t(0, 0).inverse();
    Certification c = certify_regular_singular(MahlerSystem(2, rm({{"z"}})), Place::Zero, t);
    CHECK(c.certified == (k == 1));
  }
  MahlerSystem g(2, rm({{"2/z"}}));
  Certification ok = certify_regular_singular(g, Place::Zero, rm({{"1/z"}}));
  CHECK(ok.certified);
  CHECK(ok.gauged.matrix() == rm({{"2"}}));
}

namespace {
bool contains(const std::vector<Complex>& pts, Complex z) {
  for (auto x : pts)
    if (std::abs(x - z) < 1e-12) return true;
  return false;
}
}  // namespace

TEST_CASE("singular_locus") {
  SingularLocus l = singular_locus(rm({{"(2*z+1)/(z+2)"}}));
  CHECK(l.points.size() == 2);
  CHECK(contains(l.points, -2.0));
  CHECK(contains(l.points, -0.5));
  for (const auto& f : l.factors) {
    CHECK(f.degree() >= 1);
    CHECK(square_free_part(f) == f);
  }
  CHECK(singular_locus(RatMatrix::identity(2)).empty());
  SingularLocus one = singular_locus(rm({{"z-1", "0"}, {"0", "1"}}));
  CHECK(one.points.size() == 1);
  CHECK(contains(one.points, 1.0));
  CHECK_THROWS_AS(singular_locus(rm({{"1", "z"}, {"1", "z"}})), MahlerError);
  Rng rng(41);
  for (int t = 0; t < 10; ++t) {
    RatMatrix m = rng.ratmatrix(2, 1, 5);
    if (determinant(m).is_zero()) continue;
    SingularLocus a = singular_locus(m), b = singular_locus(inverse(m));
    CHECK(a.points.size() == b.points.size());
    for (auto z : a.points) CHECK(contains(b.points, z));
  }
}

TEST_CASE("orbit_membership") {
  OrbitSet e(2, {-0.5}, OrbitSide::Inside);
  CHECK(orbit_membership(e, CoverPoint(0.25, 0.0)));
  CHECK(orbit_membership(e, CoverPoint(0.5, M_PI)));
  CHECK_FALSE(orbit_membership(e, CoverPoint(1.0 / 3.0, 0.0), 8));
  // square roots of -1/2 (k < 0 direction)
  CHECK(orbit_membership(e, CoverPoint(std::sqrt(0.5), M_PI / 2)));
  CHECK_FALSE(orbit_membership(e, CoverPoint(std::sqrt(0.5), M_PI / 3)));
  CHECK_THROWS_AS(OrbitSet(2, {2.0}, OrbitSide::Inside), MahlerError);
  CHECK_THROWS_AS(OrbitSet(2, {0.5}, OrbitSide::Outside), MahlerError);
  // phi-stability on members
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    int m = static_cast<int>(rng.integer(0, 4));
    CoverPoint z(std::pow(0.5, 1.0 / std::pow(2.0, m)), (M_PI + 2 * M_PI * static_cast<double>(rng.integer(-3, 3))) / std::pow(2.0, m));
    REQUIRE(orbit_membership(e, z));
    CHECK(orbit_membership(e, z.phi(2)));
  }
}

}
