#include "doctest.h"
#include "helpers.hpp"
#include "wildhodge/betti.hpp"
#include "wildhodge/fixtures.hpp"

using namespace th;

namespace {

Rational rq(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

Weight w(std::initializer_list<Rational> v) { return Weight(std::vector<Rational>(v)); }

PunctureData tame(const Matrix& c, const Matrix& h) {
  PunctureData p;
  p.C = c;
  p.h = h;
  return p;
}

// one tame puncture carrying the given C and h
FilteredStokesRep simple(const Matrix& c, const Matrix& h, const Weight& gamma) {
  FilteredStokesRep f;
  f.rep.n = c.size();
  f.rep.punctures.push_back(tame(c, h));
  f.weights = {gamma};
  return f;
}

Matrix permutation(const std::vector<std::size_t>& sigma) {
  Matrix m(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) m(sigma[i], i) = 1;
  return m;
}

// Oracle: a proper nonempty coordinate subspace preserved by every generator.
bool has_invariant_coordinate_subspace(const StokesRep& rho) {
  std::size_t n = rho.n;
  auto gens = rho.generators();
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    bool ok = true;
    for (const auto& g : gens)
      for (std::size_t i = 0; i < n && ok; ++i)
        for (std::size_t j = 0; j < n && ok; ++j)
          if (!(mask >> i & 1) && (mask >> j & 1) && !g(i, j).is_zero()) ok = false;
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("check_relation examples") {
  StokesRep triv;
  triv.n = 2;
  triv.handles.push_back({Matrix::identity(2), Matrix::identity(2)});
  triv.punctures.push_back(tame(Matrix::identity(2), Matrix::identity(2)));
  CHECK(check_relation(triv));

  StokesRep torus;
  torus.n = 2;
  torus.handles.push_back({diag({q(2), q(3)}), mat(2, {0, 1, 1, 0})});
  CHECK_FALSE(check_relation(torus));

  StokesRep bad = triv;
  bad.punctures[0].h = Matrix::identity(3);
  CHECK_THROWS_WITH_AS(check_relation(bad), "dimension mismatch among factors", Error);
}

TEST_CASE("constructive genus 0 GL2 solution") {
  auto rho = genus0_gl2_solution(1, 1);
  const auto& p = rho.punctures[0];
  CHECK(p.S[2] == Matrix::identity(2) + E(2, 1, 0) * q(-1, 2));
  CHECK(p.S[3] == Matrix::identity(2) + E(2, 0, 1) * q(-2));
  CHECK(p.h == diag({q(1, 2), q(2)}));
  // hand product of the Stokes factors
  Matrix prod = mat(2, {1, -2, 0, 1}) * (Matrix::identity(2) + E(2, 1, 0) * q(-1, 2)) * mat(2, {1, 1, 0, 1}) *
                mat(2, {1, 0, 1, 1});
  CHECK(prod == diag({q(2), q(1, 2)}));
  CHECK(check_relation(rho));
  CHECK(rho.structurally_valid());

  FixtureRng rng(3);
  for (int t = 0; t < 20; ++t) {
    Rational x = rng.rational(), a = rng.rational();
    if (sgn(1 + a * x) == 0) continue;
    Rational b = -x / (1 + a * x);
    if (sgn(1 + a * b) == 0) continue;
    auto r = genus0_gl2_solution(x, a);
    CHECK(check_relation(r));
    CHECK(r.structurally_valid());
  }
  CHECK_THROWS_AS(genus0_gl2_solution(1, -1), Error);
}

TEST_CASE("group_act") {
  auto rho = genus0_gl2_solution(2, rq(1, 3));
  auto same = group_act(Matrix::identity(2), {Matrix::identity(2)}, rho);
  CHECK(same.punctures[0].C == rho.punctures[0].C);
  CHECK(same.punctures[0].S == rho.punctures[0].S);

  Matrix lam = Matrix::identity(2) * q(5);
  auto central = group_act(lam, {lam}, rho);
  CHECK(central.punctures[0].C == rho.punctures[0].C);
  CHECK(central.punctures[0].h == rho.punctures[0].h);
  CHECK(central.punctures[0].S == rho.punctures[0].S);

  CHECK_THROWS_WITH_AS(group_act(Matrix::identity(2), {mat(2, {1, 1, 0, 1})}, rho), "k_x outside H_x", Error);

  FixtureRng rng(17);
  for (int t = 0; t < 30; ++t) {
    Matrix g = rng.matrix(2, 6);
    if (determinant(g).is_zero()) continue;
    Matrix k = Matrix::diagonal({GaussRat(rng.nonzero_rational()), GaussRat(rng.nonzero_rational())});
    StokesRep r = rho;
    r.handles.push_back({Matrix::identity(2), Matrix::identity(2)});
    auto moved = group_act(g, {k}, r);
    CHECK(check_relation(moved));
    CHECK(moved.structurally_valid());
  }
}

TEST_CASE("is_compatible") {
  auto d = simple(diag({q(1), q(2)}), diag({q(3), q(4)}), Weight::zero(2));
  ParabolicSpec upper(std::vector<int>{0, 1});
  CHECK(is_compatible(d, upper));
  auto s = simple(Matrix::identity(2), Matrix::identity(2) + E(2, 1, 0), Weight::zero(2));
  CHECK_FALSE(is_compatible(s, upper));
  ParabolicSpec blocks(std::vector<int>{0, 0, 1});
  auto b = simple(mat(3, {1, 2, 3, 4, 5, 6, 0, 0, 7}), Matrix::identity(3), Weight::zero(3));
  CHECK(is_compatible(b, blocks));
  CHECK_FALSE(is_compatible(b, ParabolicSpec(std::vector<int>{0, 1, 2})));

  // conjugation by permutations carries compatibility along
  FixtureRng rng(9);
  for (int t = 0; t < 20; ++t) {
    Matrix c(3);
    auto p = enumerate_parabolics_containing_T(3)[static_cast<std::size_t>(rng.integer(0, 11))];
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        if (p.block_of(i) <= p.block_of(j) || rng.integer(0, 4) == 0) c(i, j) = rng.gauss(4);
    auto rho = simple(c, Matrix::identity(3), Weight::zero(3));
    std::vector<std::size_t> sigma{0, 1, 2};
    std::swap(sigma[static_cast<std::size_t>(rng.integer(0, 2))], sigma[static_cast<std::size_t>(rng.integer(0, 2))]);
    Matrix g = permutation(sigma);
    auto moved = group_act(g, {g}, rho.rep);
    for (const auto& par : enumerate_parabolics_containing_T(3)) {
      std::vector<int> blk(3);
      for (std::size_t i = 0; i < 3; ++i) blk[sigma[i]] = par.block_of(i);
      CHECK(is_compatible(moved, ParabolicSpec(blk)) == is_compatible(rho, par));
    }
  }
}

TEST_CASE("degree_loc and degree_zero") {
  ParabolicSpec upper(std::vector<int>{0, 1});
  auto one = simple(diag({q(1), q(2)}), Matrix::identity(2), w({rq(1, 3), rq(-1, 3)}));
  CHECK(degree_loc(one, upper, Character({-2, 2})) == rq(-4, 3));
  auto zero = simple(diag({q(1), q(2)}), Matrix::identity(2), Weight::zero(2));
  CHECK(degree_loc(zero, upper, Character({-1, 1})) == 0);

  FilteredStokesRep two;
  two.rep.n = 2;
  two.rep.punctures = {tame(Matrix::identity(2), Matrix::identity(2)), tame(Matrix::identity(2), Matrix::identity(2))};
  two.weights = {w({rq(1, 3), 0}), w({0, rq(-1, 3)})};
  CHECK(degree_loc(two, upper, Character({-1, 1})) == rq(-2, 3));

  CHECK_THROWS_AS(degree_loc(one, upper, Character({1, 1, 1})), Error);
  CHECK_THROWS_AS(degree_loc(simple(Matrix::identity(2) + E(2, 1, 0), Matrix::identity(2), Weight::zero(2)), upper,
                             Character({-1, 1})),
                  Error);

  CHECK(degree_zero(one));
  CHECK_FALSE(degree_zero(simple(Matrix::identity(2), Matrix::identity(2), w({rq(1, 2), 0}))));
  two.weights = {w({rq(1, 3), 0}), w({rq(-1, 3), 0})};
  CHECK(degree_zero(two));

  // linear in the character
  FixtureRng rng(23);
  ParabolicSpec p3(std::vector<int>{0, 1, 1});
  for (int t = 0; t < 20; ++t) {
    auto f = simple(Matrix::identity(3), Matrix::identity(3), random_small_weight(rng, 3));
    long a = rng.integer(-5, 0), b = rng.integer(0, 5), c = rng.integer(-5, 5), e = rng.integer(-5, 5);
    Character x({a, b, b}), y({c, e, e});
    CHECK(degree_loc(f, p3, x + y) == degree_loc(f, p3, x) + degree_loc(f, p3, y));
  }
}

TEST_CASE("check_stability examples") {
  auto unst = simple(diag({q(1), q(2)}), diag({q(3), q(5)}), w({rq(1, 4), rq(-1, 4)}));
  auto v = check_stability(unst);
  CHECK(v.status == Stability::kUnstable);
  CHECK(v.compatible_parabolics == 2);
  REQUIRE(v.witnesses.size() == 1);
  CHECK(v.witnesses[0].degree == rq(-1, 2));

  auto semi = simple(diag({q(1), q(2)}), diag({q(3), q(5)}), Weight::zero(2));
  auto vs = check_stability(semi);
  CHECK(vs.status == Stability::kSemistable);
  CHECK(vs.witnesses.size() == 2);

  // full cycle plus a unipotent with no common invariant coordinate flag
  FilteredStokesRep irr = simple(permutation({1, 2, 0}), Matrix::identity(3) + E(3, 0, 1) + E(3, 0, 2), Weight::zero(3));
  auto vi = check_stability(irr);
  CHECK(vi.status == Stability::kStable);
  CHECK(vi.witnesses.empty());
  CHECK(vi.compatible_parabolics == 0);

  FilteredStokesRep big;
  big.rep.n = 6;
  big.rep.punctures.push_back(tame(Matrix::identity(6), Matrix::identity(6)));
  big.weights = {Weight::zero(6)};
  CHECK_THROWS_AS(check_stability(big), std::invalid_argument);
}

TEST_CASE("stability: zero weights match irreducibility, serial matches parallel") {
  FixtureRng rng(55);
  int stable = 0, semistable = 0;
  for (int t = 0; t < 60; ++t) {
    std::size_t n = 2 + static_cast<std::size_t>(rng.integer(0, 2));
    auto pats = enumerate_parabolics_containing_T(n);
    auto p = pats[static_cast<std::size_t>(rng.integer(0, static_cast<long>(pats.size()) - 1))];
    Matrix c(n), h(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        bool allowed = p.block_of(i) <= p.block_of(j) || rng.integer(0, 3) == 0;
        if (allowed) c(i, j) = rng.gauss(3);
        if (i == j) h(i, j) = 1;
        else if (allowed && rng.integer(0, 1)) h(i, j) = rng.gauss(3);
      }
    bool weighted = t % 3 == 0;
    auto f = simple(c, h, weighted ? random_small_weight(rng, n) : Weight::zero(n));
    auto par = check_stability(f);
    CHECK(par == check_stability_serial(f));
    if (!weighted) {
      CHECK((par.status == Stability::kStable) == !has_invariant_coordinate_subspace(f.rep));
      CHECK(par.status != Stability::kUnstable);
      (par.status == Stability::kStable ? stable : semistable)++;
    }
  }
  CHECK(stable > 0);
  CHECK(semistable > 0);
}

TEST_CASE("filtered structure") {
  auto f = simple(Matrix::identity(2), mat(2, {1, 1, 0, 1}), w({rq(1, 3), 0}));
  CHECK(f.filtered());
  f.weights = {w({0, rq(1, 3)})};
  CHECK_FALSE(f.filtered());
}
