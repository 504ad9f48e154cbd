#include "doctest.h"
#include "helpers.hpp"
#include "wildhodge/fixtures.hpp"
#include "wildhodge/metric.hpp"

using namespace th;

namespace {

Weight wt(std::vector<Rational> v) { return Weight(std::move(v)); }

MetricData data(const Matrix& y, const Matrix& s, std::vector<Rational> beta = {}) {
  if (beta.empty()) beta.assign(y.size(), Rational(0));
  Sl2Data t = sl2_complete(y);
  t.s = s;
  return MetricData::from(wt(beta), t);
}

bool all_hold(const std::vector<IdentityCheck>& r) {
  for (const auto& c : r)
    if (!c.holds) return false;
  return r.size() == 10;
}

// random nilpotent of size n, conjugated out of strict upper triangular form
Matrix random_nilpotent(FixtureRng& rng, std::size_t n) {
  for (;;) {
    Matrix u(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (rng.integer(0, 2)) u(i, j) = rng.gauss(3);
    Matrix p = rng.matrix(n, 3);
    if (determinant(p).is_zero()) continue;
    return p * u * inverse(p);
  }
}

}  // namespace

TEST_CASE("t_derivative") {
  Matrix m = mat(2, {1, 2, 3, 4});
  CHECK(t_derivative(TPoly::monomial(m, 1)) == TPoly::monomial(m * q(-1), 2));
  CHECK(t_derivative(TPoly::monomial(m, 0)).is_zero());
  CHECK(t_derivative(TPoly::monomial(m, 2)) == TPoly::monomial(m * q(-2), 3));
  // Leibniz
  TPoly a = TPoly::monomial(m, 1) + TPoly::monomial(E(2, 0, 1), 2);
  TPoly b = TPoly::monomial(E(2, 1, 0), 0) + TPoly::monomial(m, 3);
  CHECK(t_derivative(a * b) == t_derivative(a) * b + a * t_derivative(b));
}

TEST_CASE("sl2 identity suite") {
  auto std2 = sl2_complete(E(2, 1, 0));
  CHECK(all_hold(sl2_identity_suite(std2)));
  // direct 2x2 product
  CHECK((Matrix::identity(2) + E(2, 0, 1)) * diag({q(1), q(-1)}) * (Matrix::identity(2) - E(2, 0, 1)) ==
        diag({q(1), q(-1)}) - E(2, 0, 1) * q(2));
  CHECK(all_hold(sl2_identity_suite(sl2_complete(Matrix(3)))));
  CHECK(all_hold(sl2_identity_suite(sl2_complete(E(3, 1, 0) + E(3, 2, 1)))));

  FixtureRng rng(2);
  for (int k = 0; k < 25; ++k) {
    std::size_t n = 2 + static_cast<std::size_t>(rng.integer(0, 2));
    CHECK(all_hold(sl2_identity_suite(sl2_complete(random_nilpotent(rng, n)))));
  }

  auto broken = std2;
  broken.H = broken.H + E(2, 0, 0);
  int failed = 0;
  for (const auto& c : sl2_identity_suite(broken)) failed += !c.holds;
  CHECK(failed > 0);
}

TEST_CASE("pseudo-curvature vanishes") {
  auto d = data(E(2, 1, 0), Matrix(2));
  CHECK(d.valid());
  CHECK(pseudo_curvature(d).is_zero());
  auto y0 = data(Matrix(2), diag({q(1, 3), gi(1, 2)}), {Rational(1, 4), 0});
  CHECK(pseudo_curvature(y0).is_zero());

  FixtureRng rng(19);
  for (int k = 0; k < 25; ++k) {
    std::size_t n = 2 + static_cast<std::size_t>(rng.integer(0, 2));
    GaussRat lam = rng.gauss(4, true);
    auto dk = data(random_nilpotent(rng, n), Matrix::identity(n) * lam,
                   std::vector<Rational>(n, rng.rational(2)));
    REQUIRE(dk.valid());
    CHECK(pseudo_curvature(dk).is_zero());
    CHECK(curvature_e0(dk) == TPoly::monomial(dk.triple.H * q(2), 2));
  }

  auto bad = d;
  bad.triple.H = bad.triple.H + E(2, 0, 0);
  CHECK_FALSE(bad.valid());
  CHECK_FALSE(pseudo_curvature(bad).is_zero());
}

TEST_CASE("Chern coefficient and curvature") {
  auto d = data(E(2, 1, 0), Matrix(2));
  TPoly expect = TPoly::monomial(E(2, 1, 0) * q(-1), 0) + TPoly::monomial(diag({q(2), q(-2)}), 1) +
                 TPoly::monomial(E(2, 0, 1) * q(2), 2);
  CHECK(chern_coefficient(d) == expect);
  CHECK(chern_coefficient(data(Matrix(2), Matrix(2))).is_zero());
  // the displayed e-frame curvature 2H t^2 + 4X t^3
  CHECK(curvature_e(d) == TPoly::monomial(diag({q(2), q(-2)}), 2) + TPoly::monomial(E(2, 0, 1) * q(4), 3));
  CHECK(curvature_e0(d) == TPoly::monomial(diag({q(2), q(-2)}), 2));
  CHECK(curvature_e0(data(Matrix(2), Matrix(2))).is_zero());
  auto d3 = data(E(3, 1, 0) + E(3, 2, 1), Matrix(3));
  CHECK(curvature_e0(d3) == TPoly::monomial(diag({q(4), q(0), q(-4)}), 2));
  CHECK(curvature_e0(d3).min_degree() >= 2);
}

TEST_CASE("Higgs field extraction") {
  auto d = data(E(2, 1, 0), Matrix(2));
  auto h = higgs_extraction(d);
  CHECK(h.phi == TPoly::monomial(E(2, 1, 0) * q(-1), 1));
  CHECK(h.residue == E(2, 1, 0) - diag({q(1), q(-1)}) + E(2, 0, 1));
  CHECK(h.frame_change_residue == E(2, 1, 0) - diag({q(1), q(-1)}) - E(2, 0, 1));
  CHECK(is_nilpotent(h.frame_change_residue));

  auto z = higgs_extraction(data(Matrix(2), Matrix(2)));
  CHECK(z.phi.is_zero());
  CHECK(z.phi_star.is_zero());
  CHECK(z.dbar.is_zero());
  CHECK(z.residue.is_zero());

  auto ss = data(Matrix(2), diag({q(1, 3), q(-1)}), {Rational(1, 5), Rational(-1, 5)});
  auto hs = higgs_extraction(ss);
  CHECK(hs.residue == diag({q(1, 3) - q(1, 5), q(-1) + q(1, 5)}) * q(1, 2));
  CHECK(hs.frame_change_residue == hs.residue);

  auto dq = d;
  dq.Q = IrregularType::from_diagonal({LaurentSeries::monomial(1, -2), LaurentSeries::monomial(-1, -2)});
  auto hq = higgs_extraction(dq);
  CHECK(hq.half_euler_Q == LaurentMatrix::from_constant(diag({q(-1), q(1)}), -2));
}

TEST_CASE("weight jump diagnostic") {
  auto a = weight_jump_check(data(Matrix(2), Matrix(2), {Rational(1, 2), 0}));
  CHECK(a.passed);
  CHECK(a.de_rham_exponents[0] == doctest::Approx(1.0).epsilon(0.02));
  CHECK(std::abs(a.de_rham_exponents[1]) < 0.02);

  auto b = weight_jump_check(data(E(2, 1, 0), Matrix(2)));
  CHECK(b.passed);

  auto c = weight_jump_check(data(Matrix(2), diag({q(1, 3), q(0)}), {Rational(-1, 4), Rational(1, 4)}));
  CHECK(c.passed);
  CHECK(c.dolbeault_exponents[0] == doctest::Approx(2.0 / 3).epsilon(0.02));

  auto j3 = weight_jump_check(data(E(3, 1, 0) + E(3, 2, 1), Matrix::identity(3) * q(1, 4)));
  CHECK(j3.passed);
}
