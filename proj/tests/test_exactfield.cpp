#include "doctest.h"
#include "helpers.hpp"

using namespace th;

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-4") == Rational(-4));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/-2"), std::invalid_argument);
  CHECK(wildhodge::ceil(Rational(-1, 2)) == 0);
  CHECK(wildhodge::ceil(Rational(1, 2)) == 1);
  CHECK(wildhodge::floor(Rational(-1, 2)) == -1);
}

TEST_CASE("gaussian rational field axioms on random triples") {
  Rng rng(7);
  for (int k = 0; k < 200; ++k) {
    GaussRat a = rng.gauss(), b = rng.gauss(), c = rng.gauss();
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    if (!a.is_zero()) CHECK(a * a.inverse() == GaussRat(1));
    CHECK(a - a == GaussRat(0));
  }
  CHECK(gi(0, 1) * gi(0, 1) == q(-1));
  CHECK_THROWS_AS(GaussRat(0).inverse(), Error);
}

TEST_CASE("series valuation") {
  LaurentSeries s(-2, {q(1), q(0), q(0), q(3)});
  CHECK(series_val(s) == -2);
  CHECK(series_val(LaurentSeries::zero()) == kInfiniteValuation);
  CHECK(series_val(LaurentSeries::monomial(q(1), 3, 5)) == 3);
  CHECK(LaurentSeries::monomial(q(1), 7, 5).is_zero());
}

TEST_CASE("series product truncation is pessimistic") {
  LaurentSeries a(0, {q(1), q(1)}, 4);   // 1 + z + O(z^4)
  LaurentSeries b(-1, {q(1)}, kExact);   // z^-1
  auto c = a * b;
  CHECK(c.trunc() == 3);
  CHECK(c.coeff(-1) == q(1));
  CHECK(c.coeff(0) == q(1));
  auto d = a * a;  // known to min(4+0, 4+0)
  CHECK(d.trunc() == 4);
  CHECK(d.coeff(1) == q(2));
  CHECK_THROWS_AS(d.coeff(4), Error);
}

TEST_CASE("series inverse") {
  LaurentSeries one_minus_z(0, {q(1), q(-1)});
  auto inv = one_minus_z.inverse(6);
  CHECK(inv.trunc() == 6);
  for (int e = 0; e < 6; ++e) CHECK(inv.coeff(e) == q(1));
  CHECK(LaurentSeries::monomial(q(2), -3).inverse() == LaurentSeries::monomial(q(1, 2), 3));
  LaurentSeries t(-1, {q(1), q(1)}, 3);  // z^-1 + 1 + O(z^3)
  auto ti = t.inverse();
  CHECK(ti.trunc() == 5);
  CHECK((t * ti).agrees_below(LaurentSeries::constant(q(1)), 3));
}

TEST_CASE("mat_mul spec examples") {
  Matrix m = mat(2, {1, 2, 3, 4});
  CHECK(mat_mul(LaurentMatrix::identity(2), lm(m)) == lm(m));
  LaurentMatrix a(2), b(2);
  a.set(0, 0, LaurentSeries::monomial(q(1), 1));
  a.set(1, 1, LaurentSeries::monomial(q(1), -1));
  b.set(0, 0, LaurentSeries::monomial(q(1), -1));
  b.set(1, 1, LaurentSeries::monomial(q(1), 1));
  CHECK(mat_mul(a, b) == LaurentMatrix::identity(2));
  auto p = LaurentMatrix::identity(2) + lm(E(2, 0, 1), 1);
  auto mneg = LaurentMatrix::identity(2) - lm(E(2, 0, 1), 1);
  CHECK(mat_mul(p, mneg) == LaurentMatrix::identity(2));
  CHECK_THROWS_AS(mat_mul(LaurentMatrix::identity(2), LaurentMatrix::identity(3)), std::invalid_argument);
}

TEST_CASE("mat_mul truncation uses matrix-wise valuations") {
  auto a = lm(mat(2, {1, 0, 0, 1}), 0, 5);
  auto b = lm(mat(2, {0, 1, 0, 0}), -2);
  auto c = mat_mul(a, b);
  CHECK(c.trunc() == 3);
  CHECK(c.coefficient(-2) == mat(2, {0, 1, 0, 0}));
}

TEST_CASE("mat_inv spec examples") {
  Matrix n = mat(3, {0, 1, 2, 0, 0, 3, 0, 0, 0});
  auto inv = mat_inv(LaurentMatrix::identity(3) + lm(n));
  Matrix expect = Matrix::identity(3) - n + n * n;
  CHECK(inv == lm(expect));
  CHECK(mat_inv(lm(diag({q(2), q(3)}))) == lm(diag({q(1, 2), q(1, 3)})));
  auto g = LaurentMatrix::identity(2) + lm(E(2, 0, 1), 1) * q(1, 2);
  CHECK(mat_inv(g) == LaurentMatrix::identity(2) - lm(E(2, 0, 1), 1) * q(1, 2));
  CHECK_THROWS_WITH_AS(mat_inv(lm(mat(2, {1, 1, 1, 1}))), "not a unit in G(K)", Error);
  LaurentMatrix zd(2);
  zd.set(0, 0, LaurentSeries::monomial(q(1), 1));
  zd.set(1, 1, LaurentSeries::constant(q(1)));
  auto zi = mat_inv(zd);
  CHECK(zi(0, 0) == LaurentSeries::monomial(q(1), -1));
}

TEST_CASE("mat_inv on 100 random invertible matrices") {
  Rng rng(11);
  int checked = 0;
  while (checked < 100) {
    std::size_t n = 2 + static_cast<std::size_t>(rng.integer(0, 1));
    Matrix c0 = rng.matrix(n, 5), c1 = rng.matrix(n, 5), cm = rng.matrix(n, 3);
    if (determinant(c0).is_zero()) continue;
    int t = 8;
    auto a = LaurentMatrix::from_coefficients({c0, c1}, 0, t) + lm(cm, -1) * q(rng.integer(0, 1));
    LaurentMatrix ai;
    try {
      ai = mat_inv(a, t);
    } catch (const Error&) {
      continue;
    }
    auto prod = mat_mul(ai, a);
    CHECK(prod.agrees_below(LaurentMatrix::identity(n), prod.trunc()));
    CHECK(prod.trunc() > 0);
    ++checked;
  }
}

TEST_CASE("mat_exp_nilpotent spec examples") {
  CHECK(mat_exp_nilpotent(lm(E(2, 0, 1))) == LaurentMatrix::identity(2) + lm(E(2, 0, 1)));
  CHECK(mat_exp_nilpotent(LaurentMatrix(2)) == LaurentMatrix::identity(2));
  auto e = mat_exp_nilpotent(lm(E(2, 1, 0), 2, 4));
  CHECK(e.agrees_below(LaurentMatrix::identity(2) + lm(E(2, 1, 0), 2), 4));
  CHECK(e.trunc() == 4);
  CHECK_THROWS_WITH_AS(mat_exp_nilpotent(lm(Matrix::identity(2))), "exponential not exactly computable",
                       Error);
}

TEST_CASE("exp of positive-valuation series is cut at cap") {
  auto e = mat_exp_nilpotent(lm(Matrix::identity(1), 1), 5);
  CHECK(e.trunc() == 5);
  // e^z = sum z^k/k!
  CHECK(e(0, 0).coeff(4) == q(1, 24));
}

TEST_CASE("exp(N) exp(-N) = I for nilpotent N") {
  Rng rng(3);
  for (int k = 0; k < 30; ++k) {
    std::size_t n = 2 + static_cast<std::size_t>(rng.integer(0, 2));
    Matrix u(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) u(i, j) = rng.gauss(5, true);
    int ex = static_cast<int>(rng.integer(-2, 2));
    auto nmat = lm(u, ex);
    CHECK(mat_mul(mat_exp_nilpotent(nmat), mat_exp_nilpotent(-nmat)) == LaurentMatrix::identity(n));
  }
}

TEST_CASE("constant matrix linear algebra") {
  Matrix a = mat(3, {1, 2, 3, 4, 5, 6, 7, 8, 10});
  CHECK(a * inverse(a) == Matrix::identity(3));
  CHECK(determinant(a) == q(-3));
  Matrix s = mat(3, {1, 2, 3, 2, 4, 6, 0, 0, 1});
  CHECK(rank(s) == 2);
  auto ns = nullspace(s);
  REQUIRE(ns.size() == 1);
  for (std::size_t i = 0; i < 3; ++i) {
    GaussRat acc;
    for (std::size_t j = 0; j < 3; ++j) acc += s(i, j) * ns[0][j];
    CHECK(acc.is_zero());
  }
  auto x = solve(a, {q(1), q(2), q(3)});
  for (std::size_t i = 0; i < 3; ++i) {
    GaussRat acc;
    for (std::size_t j = 0; j < 3; ++j) acc += a(i, j) * x[j];
    CHECK(acc == q(static_cast<long>(i) + 1));
  }
  CHECK(exp_nilpotent(E(2, 0, 1)) == Matrix::identity(2) + E(2, 0, 1));
  CHECK_THROWS_AS(inverse(s), Error);
}
