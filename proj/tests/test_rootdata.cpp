#include "doctest.h"
#include "helpers.hpp"
#include "wildhodge/rootdata.hpp"

using namespace th;

namespace {

Weight w(std::initializer_list<Rational> v) { return Weight(std::vector<Rational>(v)); }

}  // namespace

TEST_CASE("m_r examples") {
  CHECK(m_r(w({0, 0}), {0, 1}) == 0);
  CHECK(m_r(w({Rational(1, 2), 0}), {0, 1}) == 0);
  CHECK(m_r(w({Rational(1, 2), 0}), {1, 0}) == 1);
  CHECK(m_r(w({1, 0}), {1, 0}) == 1);
}

TEST_CASE("m_r(r) + m_r(-r) in {0,1}") {
  Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    Weight t = w({rng.rational(6), rng.rational(6), rng.rational(6)});
    for (const auto& r : all_roots(3)) {
      long s = m_r(t, r) + m_r(t, r.negated());
      CHECK((s == 0 || s == 1));
      CHECK((s == 0) == is_integer(root_value(t, r)));
    }
  }
}

TEST_CASE("weight validity") {
  CHECK(w({Rational(1, 2), 0}).is_valid());
  CHECK(w({Rational(1, 2), 0}).is_small());
  CHECK(w({1, 0}).is_valid());
  CHECK_FALSE(w({1, 0}).is_small());
  CHECK_FALSE(w({2, 0}).is_valid());
}

TEST_CASE("parahoric membership examples") {
  CHECK(parahoric_member(LaurentMatrix::identity(2), w({Rational(1, 3), 0})));
  CHECK_FALSE(parahoric_member(LaurentMatrix::identity(2) + lm(E(2, 0, 1), -1), w({0, 0})));
  // val(g_21) = 0 but theta_1 - theta_2 = 1/2 is required
  CHECK_FALSE(parahoric_member(LaurentMatrix::identity(2) + lm(E(2, 1, 0)), w({Rational(1, 2), 0})));
  CHECK_THROWS_AS(parahoric_member(LaurentMatrix(2), w({0, 0})), Error);

  LaurentMatrix a(2);
  a.set(0, 0, LaurentSeries::monomial(q(1), -1));
  a.set(1, 1, LaurentSeries::monomial(q(1), -1));
  CHECK_FALSE(lie_parahoric_member(a, w({0, 0})));
  CHECK(lie_parahoric_member(lm(E(2, 0, 1)), w({Rational(1, 2), 0})));
  CHECK(lie_parahoric_member(LaurentMatrix(2), w({0, 0})));
}

TEST_CASE("parahoric subgroup property on random pairs") {
  Rng rng(9);
  int checked = 0;
  for (int k = 0; k < 300 && checked < 60; ++k) {
    Weight t = w({Rational(rng.integer(0, 2), 3), 0, Rational(-rng.integer(0, 1), 3)});
    auto random_member = [&]() {
      LaurentMatrix g = LaurentMatrix::identity(3);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
          if (i == j) continue;
          int e = static_cast<int>(wildhodge::ceil(t[j] - t[i]).get_num().get_si()) + static_cast<int>(rng.integer(0, 1));
          LaurentMatrix u = lm(E(3, i, j), e) * rng.gauss(3, false);
          g = mat_mul(g, mat_exp_nilpotent(u));
        }
      return g;
    };
    auto g = random_member(), h = random_member();
    REQUIRE(parahoric_member(g, t));
    REQUIRE(parahoric_member(h, t));
    CHECK(parahoric_member(mat_mul(g, h), t));
    ++checked;
  }
  CHECK(checked == 60);
}

TEST_CASE("parabolic from weight") {
  CHECK(parabolic_from_weight(w({0, 0, 0})).root_subset().size() == 6);
  auto b = parabolic_from_weight(w({Rational(1, 2), 0}));
  CHECK(b.contains({0, 1}));
  CHECK_FALSE(b.contains({1, 0}));
  CHECK_FALSE(parabolic_from_weight(w({Rational(1, 3), Rational(1, 3)})).is_proper());
  Rng rng(2);
  for (int k = 0; k < 50; ++k) {
    Weight t = w({rng.rational(4), rng.rational(4), rng.rational(4), rng.rational(4)});
    Weight s = t;
    Rational c(rng.integer(1, 7), rng.integer(1, 7));
    c.canonicalize();
    for (auto& x : s.v) x *= c;
    CHECK(parabolic_from_weight(s) == parabolic_from_weight(t));
    for (const auto& r : all_roots(4)) CHECK(parabolic_from_weight(t).contains(r) == (root_value(t, r) >= 0));
  }
}

TEST_CASE("parabolic from roots round trip") {
  for (std::size_t n = 2; n <= 4; ++n)
    for (const auto& p : enumerate_parabolics_containing_T(n)) CHECK(ParabolicSpec::from_roots(n, p.root_subset()) == p);
  CHECK_THROWS_AS(ParabolicSpec::from_roots(2, {}), std::invalid_argument);
  // covers but not closed: 1<2, 2<3, 3<1
  CHECK_THROWS_AS(ParabolicSpec::from_roots(3, {{0, 1}, {1, 2}, {2, 0}}), std::invalid_argument);
}

TEST_CASE("pairing and parahoric degree") {
  Rational a(2, 3);
  long c = 5;
  CHECK(pairing(w({a, -a}), Character({-c, c})) == -2 * a * c);
  CHECK(pairing(w({1, 2}), Character({0, 0})) == 0);
  CHECK(pairing(w({Rational(1, 2), 0}), Character({1, 1})) == Rational(1, 2));
  CHECK(parahoric_degree(1, {w({Rational(-1, 2), Rational(-1, 2)})}, Character({1, 1})) == 0);
  CHECK(parahoric_degree(0, {w({0, 0})}, Character({1, 1})) == 0);
  CHECK(parahoric_degree(2, {w({Rational(1, 4), Rational(1, 4)}), w({Rational(1, 4), Rational(1, 4)})},
                         Character({1, 1})) == 3);
}

// Fubini numbers minus the one-block partition.
TEST_CASE("enumerate parabolics") {
  CHECK(enumerate_parabolics_containing_T(1).empty());
  CHECK(enumerate_parabolics_containing_T(2).size() == 2);
  CHECK(enumerate_parabolics_containing_T(3).size() == 12);
  CHECK(enumerate_parabolics_containing_T(4).size() == 74);
  CHECK(enumerate_parabolics_containing_T(5).size() == 540);
  CHECK_THROWS_AS(enumerate_parabolics_containing_T(6), std::invalid_argument);
  for (std::size_t n = 2; n <= 4; ++n)
    for (const auto& p : enumerate_parabolics_containing_T(n)) {
      CHECK(roots_cover(n, p.root_subset()));
      CHECK(roots_closed(n, p.root_subset()));
      CHECK(p.is_proper());
    }
}

TEST_CASE("fundamental characters") {
  ParabolicSpec p({0, 1, 1});
  auto chis = fundamental_characters(p);
  REQUIRE(chis.size() == 1);
  CHECK(chis[0] == Character({-2, 1, 1}));
  for (std::size_t n = 2; n <= 4; ++n)
    for (const auto& par : enumerate_parabolics_containing_T(n)) {
      auto g = fundamental_characters(par, CenterConvention::kCenterOfG);
      CHECK(g == fundamental_characters(par, CenterConvention::kCenterOfP));
      CHECK(static_cast<int>(g.size()) == par.num_blocks() - 1);
      CHECK(center_components(par).size() == 1);
      for (const auto& chi : g) {
        CHECK(chi.constant_on_blocks(par));
        CHECK(chi.antidominant(par));
        long s = 0;
        for (long x : chi.v) s += x;
        CHECK(s == 0);
      }
    }
}
