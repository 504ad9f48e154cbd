#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "wildhodge/fixtures.hpp"
#include "wildhodge/nahc.hpp"

using namespace th;

namespace {

constexpr double kPi = 3.14159265358979323846;

Rational rq(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

IrregularType scalar_q(std::vector<std::pair<int, GaussRat>> terms) {
  LaurentSeries s;
  for (auto& [e, c] : terms) s += LaurentSeries::monomial(c, e);
  return IrregularType::from_diagonal({s});
}

DeRhamLocal local(const Matrix& res, std::vector<Rational> beta = {}) {
  if (beta.empty()) beta.assign(res.size(), Rational(0));
  DeRhamLocal d;
  d.beta = Weight(beta);
  d.residue = res;
  return d;
}

}  // namespace

TEST_CASE("dR_to_Dol examples") {
  DeRhamLocal d = local(diag({q(1, 2), q(-3)}));
  d.Q = IrregularType::from_diagonal({LaurentSeries::monomial(1, -2), LaurentSeries::monomial(-1, -2)});
  auto dol = dR_to_Dol(d);
  CHECK(dol.alpha == Weight(std::vector<Rational>{rq(1, 2), rq(-3)}));
  CHECK(dol.residue == diag({q(1, 4), q(-3, 2)}));
  CHECK(dol.Q.entry(0) == LaurentSeries::monomial(q(1, 2), -2));
  CHECK(dol.Q.entry(1) == LaurentSeries::monomial(q(-1, 2), -2));

  auto zero = dR_to_Dol(local(Matrix(2)));
  CHECK(zero.alpha == Weight::zero(2));
  CHECK(zero.residue.is_zero());

  auto nil = dR_to_Dol(local(E(2, 1, 0)));
  CHECK(nil.alpha == Weight::zero(2));
  CHECK(nil.residue == E(2, 1, 0) - diag({q(1), q(-1)}) + E(2, 0, 1));

  // complex eigenvalues: alpha is the real part
  auto cx = dR_to_Dol(local(diag({gi(1, 3), gi(-2, -1)}), {rq(1, 3), 0}));
  CHECK(cx.alpha == Weight(std::vector<Rational>{rq(1), rq(-2)}));
  CHECK(cx.residue == diag({GaussRat(rq(1, 3), rq(3, 2)), GaussRat(rq(-1), rq(-1, 2))}));

  CHECK_THROWS_AS(dR_to_Dol(local(mat(2, {1, 1, 0, 2}))), Error);
  CHECK_THROWS_AS(dR_to_Dol(local(Matrix(2), {0, 0, 0})), std::invalid_argument);
}

TEST_CASE("dR_to_Betti examples") {
  auto b = dR_to_Betti(local(diag({q(1, 2), q(0)})));
  CHECK(b.gamma == Weight(std::vector<Rational>{rq(-1, 2), rq(0)}));
  REQUIRE(b.semisimple.size() == 2);
  CHECK(*b.semisimple[0].exact == GaussRat(-1));
  CHECK(*b.semisimple[1].exact == GaussRat(1));
  CHECK(b.unipotent.size() == 1);

  auto zero = dR_to_Betti(local(Matrix(2), {rq(1, 5), rq(-1, 5)}));
  CHECK(zero.gamma == Weight(std::vector<Rational>{rq(1, 5), rq(-1, 5)}));
  auto m = zero.numeric_monodromy();
  CHECK(std::abs(m[0] - 1.0) < 1e-15);
  CHECK(std::abs(m[1]) < 1e-15);

  auto nil = dR_to_Betti(local(E(2, 1, 0)));
  REQUIRE(nil.unipotent.size() == 2);
  CHECK(nil.unipotent[0] == Matrix::identity(2));
  CHECK(nil.unipotent[1] == E(2, 1, 0) * gi(0, -2));
  auto mn = nil.numeric_monodromy();
  CHECK(std::abs(mn[2] - std::complex<double>(0, -2 * kPi)) < 1e-12);

  auto quarter = dR_to_Betti(local(diag({q(1, 4), q(-1, 4)})));
  CHECK(*quarter.semisimple[0].exact == gi(0, -1));
  CHECK(*quarter.semisimple[1].exact == gi(0, 1));

  auto third = dR_to_Betti(local(diag({q(1, 3), q(0)})), 200);
  CHECK_FALSE(third.semisimple[0].exact);
  CHECK(*third.semisimple[0].turns == rq(1, 3));
  CHECK(third.semisimple[0].value.real() == doctest::Approx(-0.5));
  CHECK(third.semisimple[0].value.imag() == doctest::Approx(-std::sqrt(3.0) / 2));
  // 200 bits carry about 60 correct digits of -1/2
  const std::string& re = third.semisimple[0].re;
  bool close = re.rfind("-4.99999999999999999999999999999999999999999999999999999", 0) == 0 ||
               re.rfind("-5.0000000000000000000000000000000000000000000000000000", 0) == 0;
  CHECK(close);
}

TEST_CASE("weights round trip and monodromy factorization on random commuting data") {
  FixtureRng rng(61);
  for (int t = 0; t < 40; ++t) {
    std::size_t n = 2 + static_cast<std::size_t>(rng.integer(0, 2));
    // s with a repeated block so that a nonzero Y can commute with it
    std::vector<GaussRat> sv;
    GaussRat a(rng.rational(4), rng.rational(4) / 8), b(rng.rational(4), rng.rational(4) / 8);
    for (std::size_t i = 0; i < n; ++i) sv.push_back(i + 1 < n ? a : b);
    Matrix s = Matrix::diagonal(sv), y(n);
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = i + 1; j + 1 < n; ++j) y(i, j) = rng.gauss(3);
    REQUIRE(commutator(s, y).is_zero());
    std::vector<Rational> beta;
    for (std::size_t i = 0; i < n; ++i) beta.push_back(rng.rational(3));
    auto d = local(s + y, beta);
    CHECK(roundtrip_weight_check(d));
    auto dol = dR_to_Dol(d);
    for (std::size_t i = 0; i < n; ++i) CHECK(dol.alpha[i] == sv[i].re());
    CHECK(monodromy_factorization_error(d) < 1e-10);
  }
}

TEST_CASE("rank-one monodromy oracle") {
  IrregularType none = IrregularType::from_diagonal({LaurentSeries::zero()});
  CHECK(std::abs(rank1_monodromy_oracle(0, none) - 1.0) < 1e-10);
  CHECK(std::abs(rank1_monodromy_oracle(q(1, 2), none) + 1.0) < 1e-8);
  auto third = rank1_monodromy_oracle(q(1, 3), scalar_q({{-1, q(-1)}}));
  CHECK(std::abs(third - std::polar(1.0, kLoopOrientation * 2 * kPi / 3)) < 1e-8);

  FixtureRng rng(7);
  for (int t = 0; t < 10; ++t) {
    Rational b = rng.rational(6);
    auto qq = scalar_q({{-2, rng.gauss(2, true)}, {-1, rng.gauss(2, true)}});
    auto m = rank1_monodromy_oracle(GaussRat(b), qq);
    auto expect = std::polar(1.0, kLoopOrientation * 2 * kPi * b.get_d());
    CHECK(std::abs(m - expect) < 1e-8);
    // and the Betti side of the table agrees
    auto bl = dR_to_Betti(local(Matrix::diagonal({GaussRat(b)}), {rq(0)}));
    CHECK(std::abs(bl.semisimple[0].value - m) < 1e-8);
  }
}
