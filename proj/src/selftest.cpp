#include "wildhodge/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "wildhodge/fixtures.hpp"

namespace wildhodge {

namespace {

using io::Json;

GaussRat q(long p, long d = 1) { return GaussRat(Rational(p, d)); }
GaussRat gi(long re, long im) { return GaussRat(Rational(re), Rational(im)); }

Rational rq(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

Matrix mat(std::size_t n, std::initializer_list<long> v) {
  std::vector<GaussRat> e;
  for (long x : v) e.emplace_back(x);
  return Matrix(n, e);
}

Matrix diag(std::initializer_list<GaussRat> d) { return Matrix::diagonal(d); }
Matrix E(std::size_t n, std::size_t i, std::size_t j) { return Matrix::unit(n, i, j); }
Matrix I(std::size_t n) { return Matrix::identity(n); }

LaurentMatrix lm(const Matrix& m, int exponent = 0, int trunc = kExact) {
  return LaurentMatrix::from_constant(m, exponent, trunc);
}

Weight w(std::vector<Rational> v) { return Weight(std::move(v)); }

IrregularType diag_type(std::initializer_list<GaussRat> c, int degree) {
  std::vector<LaurentSeries> d;
  for (const auto& x : c) d.push_back(LaurentSeries::monomial(x, -degree));
  return IrregularType::from_diagonal(d);
}

PunctureData tame(const Matrix& c, const Matrix& h) {
  PunctureData p;
  p.C = c;
  p.h = h;
  return p;
}

FilteredStokesRep simple(const Matrix& c, const Matrix& h, const Weight& gamma) {
  FilteredStokesRep f;
  f.rep.n = c.size();
  f.rep.punctures.push_back(tame(c, h));
  f.weights = {gamma};
  return f;
}

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

MetricData metric(const Matrix& y, const Matrix& s, std::vector<Rational> beta = {}) {
  if (beta.empty()) beta.assign(y.size(), Rational(0));
  Sl2Data t = sl2_complete(y);
  t.s = s;
  return MetricData::from(Weight(beta), t);
}

DeRhamLocal local(const Matrix& res, std::vector<Rational> beta = {}) {
  if (beta.empty()) beta.assign(res.size(), Rational(0));
  DeRhamLocal d;
  d.beta = Weight(beta);
  d.residue = res;
  return d;
}

class Suite {
 public:
  void section(const std::string& name) {
    flush();
    name_ = name;
  }

  void check(const std::string& name, const std::function<bool()>& f) {
    Json c;
    c["name"] = name;
    bool ok = false;
    std::string error;
    try {
      ok = f();
    } catch (const std::exception& e) {
      error = e.what();
    }
    c["passed"] = ok;
    if (!error.empty()) c["error"] = error;
    (ok ? passed_ : failed_)++;
    (ok ? sec_pass_ : sec_fail_)++;
    checks_.push_back(c);
  }

  // passes when f throws a library error whose message contains `needle`
  void throws(const std::string& name, const std::function<void()>& f, const std::string& needle) {
    check(name, [&] {
      try {
        f();
      } catch (const Error& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
      } catch (const std::invalid_argument& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
      }
      return false;
    });
  }

  SelftestOutcome finish(Json head) {
    flush();
    head["sections"] = sections_;
    head["passed"] = passed_;
    head["failed"] = failed_;
    head["status"] = failed_ == 0 ? "ok" : "failed";
    return {head, passed_, failed_};
  }

 private:
  void flush() {
    if (name_.empty()) return;
    Json s;
    s["name"] = name_;
    s["passed"] = sec_pass_;
    s["failed"] = sec_fail_;
    s["checks"] = checks_;
    sections_.push_back(s);
    checks_ = Json::array();
    sec_pass_ = sec_fail_ = 0;
    name_.clear();
  }

  std::string name_;
  Json sections_ = Json::array(), checks_ = Json::array();
  std::size_t passed_ = 0, failed_ = 0, sec_pass_ = 0, sec_fail_ = 0;
};

// ------------------------------------------------------------ worked examples

void exactfield_examples(Suite& s) {
  s.section("exactfield examples");
  s.check("val(z^-2 + 3z) = -2", [] {
    return (LaurentSeries::monomial(1, -2) + LaurentSeries::monomial(3, 1)).valuation() == -2;
  });
  s.check("val(0) = +inf", [] { return LaurentSeries::zero().valuation() == kInfiniteValuation; });
  s.check("val(z^3 + O(z^5)) = 3", [] { return LaurentSeries::monomial(1, 3, 5).valuation() == 3; });
  s.check("I M = M", [] {
    auto m = lm(mat(2, {1, 2, 3, 4}), -1) + lm(E(2, 1, 0), 2);
    return mat_mul(LaurentMatrix::identity(2), m) == m;
  });
  s.check("diag(z, 1/z) diag(1/z, z) = I", [] {
    LaurentMatrix a(2), b(2);
    a.set(0, 0, LaurentSeries::monomial(1, 1));
    a.set(1, 1, LaurentSeries::monomial(1, -1));
    b.set(0, 0, LaurentSeries::monomial(1, -1));
    b.set(1, 1, LaurentSeries::monomial(1, 1));
    return mat_mul(a, b) == LaurentMatrix::identity(2);
  });
  s.check("(I + E12 z)(I - E12 z) = I", [] {
    auto a = LaurentMatrix::identity(2) + lm(E(2, 0, 1), 1);
    auto b = LaurentMatrix::identity(2) - lm(E(2, 0, 1), 1);
    return mat_mul(a, b) == LaurentMatrix::identity(2);
  });
  s.check("inv(I + E12) = I - E12", [] {
    return mat_inv(lm(I(2) + E(2, 0, 1))) == lm(I(2) - E(2, 0, 1));
  });
  s.check("inv(diag(2,3)) = diag(1/2,1/3)", [] { return mat_inv(lm(diag({q(2), q(3)}))) == lm(diag({q(1, 2), q(1, 3)})); });
  s.check("inv(I + E12 z/2) = I - E12 z/2", [] {
    auto a = LaurentMatrix::identity(2) + lm(E(2, 0, 1) * q(1, 2), 1);
    auto b = LaurentMatrix::identity(2) - lm(E(2, 0, 1) * q(1, 2), 1);
    return mat_mul(mat_inv(a), a) == LaurentMatrix::identity(2) && mat_inv(a).agrees_below(b, kDefaultTrunc);
  });
  s.check("exp(E12) = I + E12", [] { return mat_exp_nilpotent(lm(E(2, 0, 1))) == lm(I(2) + E(2, 0, 1)); });
  s.check("exp(0) = I", [] { return mat_exp_nilpotent(LaurentMatrix(2)) == LaurentMatrix::identity(2); });
  s.check("exp(E21 z^2 + O(z^4)) = I + E21 z^2", [] {
    auto r = mat_exp_nilpotent(lm(E(2, 1, 0), 2, 4));
    auto expect = LaurentMatrix::identity(2) + lm(E(2, 1, 0), 2);
    return r.trunc() == 4 && r.agrees_below(expect, 4);
  });
}

void rootdata_examples(Suite& s) {
  s.section("rootdata examples");
  s.check("m_r at theta = 0", [] { return m_r(Weight::zero(2), {0, 1}) == 0; });
  s.check("m_r at theta = (1/2, 0)", [] {
    Weight t = w({rq(1, 2), 0});
    return m_r(t, {0, 1}) == 0 && m_r(t, {1, 0}) == 1;
  });
  s.check("m_r at theta = (1, 0)", [] { return m_r(w({1, 0}), {1, 0}) == 1; });
  s.check("I is parahoric", [] { return parahoric_member(LaurentMatrix::identity(2), w({rq(1, 3), rq(-1, 5)})); });
  s.check("I + E12/z not parahoric at 0", [] {
    return !parahoric_member(LaurentMatrix::identity(2) + lm(E(2, 0, 1), -1), Weight::zero(2));
  });
  s.check("I + E21 not parahoric at (1/2, 0)", [] { return !parahoric_member(lm(I(2) + E(2, 1, 0)), w({rq(1, 2), 0})); });
  s.check("diag(1/z, 1/z) outside g_0(K)", [] { return !lie_parahoric_member(lm(I(2), -1), Weight::zero(2)); });
  s.check("E12 in g_theta(K) at (1/2, 0)", [] { return lie_parahoric_member(lm(E(2, 0, 1)), w({rq(1, 2), 0})); });
  s.check("0 in g_theta(K)", [] { return lie_parahoric_member(LaurentMatrix(2), Weight::zero(2)); });
  s.check("P of zero weight is G", [] { return !parabolic_from_weight(Weight::zero(3)).is_proper(); });
  s.check("P of (1/2, 0) is the upper Borel", [] {
    return parabolic_from_weight(w({rq(1, 2), 0})) == ParabolicSpec(std::vector<int>{0, 1});
  });
  s.check("P of (1/3, 1/3) is G", [] { return !parabolic_from_weight(w({rq(1, 3), rq(1, 3)})).is_proper(); });
  s.check("<(a,-a), (-c,c)> = -2ac", [] { return pairing(w({rq(1, 3), rq(-1, 3)}), Character({-2, 2})) == rq(-4, 3); });
  s.check("<theta, 0> = 0", [] { return pairing(w({rq(1, 3), rq(2)}), Character({0, 0})) == 0; });
  s.check("<(1/2,0), det> = 1/2", [] { return pairing(w({rq(1, 2), 0}), Character({1, 1})) == rq(1, 2); });
  s.check("parahoric degree 1 - 1 = 0", [] {
    return parahoric_degree(1, {w({rq(-1, 2), rq(-1, 2)})}, Character({1, 1})) == 0;
  });
  s.check("parahoric degree with zero weights", [] {
    return parahoric_degree(0, {Weight::zero(2)}, Character({1, 1})) == 0;
  });
  s.check("parahoric degree 2 + 1/2 + 1/2 = 3", [] {
    Weight t = w({rq(1, 4), rq(1, 4)});
    return parahoric_degree(2, {t, t}, Character({1, 1})) == 3;
  });
  s.check("2 proper parabolics for n = 2", [] { return enumerate_parabolics_containing_T(2).size() == 2; });
  s.check("12 proper parabolics for n = 3", [] { return enumerate_parabolics_containing_T(3).size() == 12; });
  s.check("none for n = 1", [] { return enumerate_parabolics_containing_T(1).empty(); });
}

MeroConnection example_conn() { return MeroConnection(lm(diag({q(1), q(-1)}), -1) + lm(E(2, 0, 1))); }

void connection_examples(Suite& s, int trunc) {
  s.section("connection examples");
  s.check("gauge by I is trivial", [] { return gauge_act(LaurentMatrix::identity(2), example_conn()).B == example_conn().B; });
  s.check("z^diag(1,0) on B = 0 gives -diag(1,0)", [] {
    LaurentMatrix zt(2);
    zt.set(0, 0, LaurentSeries::monomial(1, 1));
    zt.set(1, 1, LaurentSeries::constant(1));
    return gauge_act(zt, MeroConnection(LaurentMatrix(2))).B == lm(diag({q(-1), q(0)}));
  });
  s.check("exp(E12 z/2) removes the constant E12", [] {
    auto g = mat_exp_nilpotent(lm(E(2, 0, 1), 1) * q(1, 2));
    auto r = gauge_act(g, example_conn());
    auto expect = lm(diag({q(1), q(-1)}), -1) - lm(E(2, 0, 1), 1) * q(1, 2);
    return r.B.agrees_below(expect, 2) && gauge_orbit_equal(example_conn(), r, g);
  });
  s.check("orbit equality with itself", [] { return gauge_orbit_equal(example_conn(), example_conn(), LaurentMatrix::identity(2)); });
  s.check("mismatched pole orders are not equal", [] {
    return !gauge_orbit_equal(example_conn(), MeroConnection(lm(diag({q(1), q(-1)}), -2)), LaurentMatrix::identity(2));
  });
  s.check("worked GL2 reduction", [trunc] {
    auto red = canonical_reduce(example_conn(), Weight::zero(2), trunc);
    return red.form.polar == std::vector<Matrix>{diag({q(1), q(-1)})} && red.form.residue.is_zero() &&
           red.gauge(0, 1).coeff(1) == q(1, 2) && gauge_orbit_equal(example_conn(), red.canonical_connection(), red.gauge);
  });
  s.check("canonical input is a fixed point", [trunc] {
    MeroConnection c(lm(diag({q(1), q(-1)}), -1) + lm(diag({q(1), q(2)})));
    auto red = canonical_reduce(c, Weight::zero(2), trunc);
    return red.gauge == LaurentMatrix::identity(2) && red.form.residue == diag({q(1), q(2)});
  });
  s.check("regular semisimple leading term forces a diagonal residue", [trunc] {
    FixtureRng rng(5);
    std::vector<Matrix> coeffs{diag({q(1), q(2), q(3)}), Matrix(3)};
    for (int m = 0; m < 3; ++m) coeffs.push_back(rng.matrix(3));
    MeroConnection c(LaurentMatrix::from_coefficients(coeffs, -2));
    auto red = canonical_reduce(c, Weight::zero(3), trunc);
    return red.form.residue.is_diagonal() && gauge_orbit_equal(c, red.canonical_connection(), red.gauge);
  });
  s.check("Q of polar diag(1,-1)/z is -diag(1,-1)/z", [trunc] {
    return extract_irregular_type(example_conn(), Weight::zero(2), trunc).Q == lm(diag({q(-1), q(1)}), -1);
  });
  s.check("logarithmic connection has trivial Q", [trunc] {
    return extract_irregular_type(MeroConnection(lm(diag({q(1, 3), q(0)}))), Weight::zero(2), trunc).trivial;
  });
  s.check("Q of polar diag(2,0)/z^2 is -diag(1,0)/z^2", [trunc] {
    MeroConnection c(lm(diag({q(2), q(0)}), -2) + lm(E(2, 1, 0)));
    return extract_irregular_type(c, Weight::zero(2), trunc).Q == lm(diag({q(-1), q(0)}), -2);
  });
  s.check("jordan(diag) = (diag, 0)", [] {
    auto [a, b] = jordan_decompose(diag({q(2), q(-3)}));
    return a == diag({q(2), q(-3)}) && b.is_zero();
  });
  s.check("jordan(E12) = (0, E12)", [] {
    auto [a, b] = jordan_decompose(E(2, 0, 1));
    return a.is_zero() && b == E(2, 0, 1);
  });
  s.check("jordan([[1,1],[0,1]]) = (I, E12)", [] {
    auto [a, b] = jordan_decompose(mat(2, {1, 1, 0, 1}));
    return a == I(2) && b == E(2, 0, 1);
  });
  s.check("sl2 completion of E21", [] {
    auto t = sl2_complete(E(2, 1, 0));
    return t.X == E(2, 0, 1) && t.H == diag({q(1), q(-1)});
  });
  s.check("sl2 completion of 0", [] {
    auto t = sl2_complete(Matrix(2));
    return t.X.is_zero() && t.H.is_zero();
  });
  s.check("sl2 completion of a 3x3 Jordan block", [] {
    auto t = sl2_complete(E(3, 1, 0) + E(3, 2, 1));
    return t.H == diag({q(2), q(0), q(-2)}) && t.relations_hold();
  });
}

void stokes_examples(Suite& s) {
  s.section("stokes examples");
  s.check("diag(1,-1)/z^2: four directions, k = 2, l = 1", [] {
    auto d = anti_stokes(diag_type({1, -1}, 2));
    return d.directions.size() == 4 && d.k == 2 && d.l && *d.l == 1;
  });
  s.check("pi/2 supported by e1-e2, 0 by e2-e1", [] {
    auto d = anti_stokes(diag_type({1, -1}, 2));
    auto up = find_direction(d, ExactAngle{1, 1, rq(1, 2)});
    auto zero = find_direction(d, ExactAngle{1, 1, rq(0)});
    return up && zero && stokes_group_basis(d, *up) == std::vector<Root>{{0, 1}} &&
           stokes_group_basis(d, *zero) == std::vector<Root>{{1, 0}};
  });
  s.throws("central Q has no directions", [] { anti_stokes(diag_type({3, 3}, 1)); }, "trivial irregular type");
  s.check("diag(1,0)/z: directions 0 and pi, l = 1", [] {
    auto d = anti_stokes(diag_type({1, 0}, 1));
    auto pi = find_direction(d, ExactAngle{1, 1, rq(1)});
    return d.directions.size() == 2 && d.l && *d.l == 1 && pi && d.directions[*pi].roots == std::vector<Root>{{0, 1}};
  });
  s.check("GL3 supports match the argument condition", [] {
    auto d = anti_stokes(diag_type({1, gi(0, 1), 0}, 1));
    std::size_t seen = 0;
    for (const auto& dir : d.directions)
      for (const Root& r : dir.roots) {
        auto lt = leading_term(d.Q, r);
        // arg c - k phi = pi
        if (!ExactAngle{lt.c, lt.k, Rational(-1, lt.k)}.same_direction(dir.angle)) return false;
        ++seen;
      }
    return seen == d.leading.size();
  });
  s.check("half periods of diag(1,-1)/z^2 are opposite", [] {
    auto d = anti_stokes(diag_type({1, -1}, 2));
    auto h = half_periods(d, 0);
    if (h.U_plus.size() != 1 || h.U_minus.size() != 1) return false;
    return h.U_plus[0].negated() == h.U_minus[0] && h.P_minus == h.P_plus.opposite();
  });
  s.check("H = T gives a Borel", [] {
    auto h = half_periods(anti_stokes(diag_type({1, 2, 3}, 1)), 0);
    return h.P_plus.num_blocks() == 3;
  });
  s.check("Levi roots excluded from U+ and U-", [] {
    auto d = anti_stokes(diag_type({1, 1, -1}, 2));
    auto h = half_periods(d, 0);
    for (const Root& r : d.levi_roots) {
      if (std::find(h.U_plus.begin(), h.U_plus.end(), r) != h.U_plus.end()) return false;
      if (std::find(h.U_minus.begin(), h.U_minus.end(), r) != h.U_minus.end()) return false;
    }
    return !d.levi_roots.empty();
  });
  s.check("dimension count 4 = 4", [] {
    auto c = stokes_dim_check(anti_stokes(diag_type({1, -1}, 2)));
    return c.lhs == 4 && c.rhs == 4;
  });
  s.check("dimension count 6 = 6 for diag(1,2,3)/z", [] {
    auto c = stokes_dim_check(anti_stokes(diag_type({1, 2, 3}, 1)));
    return c.lhs == 6 && c.rhs == 6;
  });
  s.check("dimension count sees only non-Levi roots", [] {
    auto c = stokes_dim_check(anti_stokes(diag_type({1, 1, -1}, 2)));
    return c.lhs == 8 && c.rhs == 8;
  });
  s.check("genus 0, one puncture, four directions", [] {
    auto p = groupoid_presentation(0, {anti_stokes(diag_type({1, -1}, 2))});
    auto stokes = std::count_if(p.relation.begin(), p.relation.end(), [](const std::string& x) { return x[0] == 'S'; });
    return p.generators.size() == 5 && stokes == 4 && p.relation.size() == 7;
  });
  s.check("genus 1, no punctures", [] {
    auto p = groupoid_presentation(1, {});
    return p.relation == std::vector<std::string>{"A1", "B1", "A1^-1", "B1^-1"};
  });
}

Matrix permutation(const std::vector<std::size_t>& sigma) {
  Matrix m(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) m(sigma[i], i) = 1;
  return m;
}

void betti_examples(Suite& s) {
  s.section("betti examples");
  s.check("identity factors satisfy the relation", [] {
    StokesRep r;
    r.n = 2;
    r.handles.push_back({I(2), I(2)});
    r.punctures.push_back(tame(I(2), I(2)));
    return check_relation(r);
  });
  s.check("[diag(2,3), (1 2)] != I", [] {
    StokesRep r;
    r.n = 2;
    r.handles.push_back({diag({q(2), q(3)}), mat(2, {0, 1, 1, 0})});
    return !check_relation(r);
  });
  s.check("constructive genus 0 GL2 solution", [] {
    auto r = genus0_gl2_solution(1, 1);
    return check_relation(r) && r.structurally_valid();
  });
  s.check("trivial action", [] {
    auto r = genus0_gl2_solution(2, rq(1, 3));
    auto m = group_act(I(2), {I(2)}, r);
    return m.punctures[0].C == r.punctures[0].C && m.punctures[0].S == r.punctures[0].S;
  });
  s.check("central action", [] {
    auto r = genus0_gl2_solution(2, rq(1, 3));
    Matrix lam = I(2) * q(5);
    auto m = group_act(lam, {lam}, r);
    return m.punctures[0].C == r.punctures[0].C && m.punctures[0].h == r.punctures[0].h;
  });
  s.check("diagonal generators compatible with the upper Borel", [] {
    return is_compatible(simple(diag({q(1), q(2)}), diag({q(3), q(4)}), Weight::zero(2)), ParabolicSpec(std::vector<int>{0, 1}));
  });
  s.check("I + E21 breaks the upper Borel", [] {
    return !is_compatible(simple(I(2), I(2) + E(2, 1, 0), Weight::zero(2)), ParabolicSpec(std::vector<int>{0, 1}));
  });
  s.check("block-upper generators and the block parabolic", [] {
    return is_compatible(simple(mat(3, {1, 2, 3, 4, 5, 6, 0, 0, 7}), I(3), Weight::zero(3)), ParabolicSpec(std::vector<int>{0, 0, 1}));
  });
  ParabolicSpec upper(std::vector<int>{0, 1});
  s.check("deg_loc = -2ac", [upper] {
    return degree_loc(simple(diag({q(1), q(2)}), I(2), w({rq(1, 3), rq(-1, 3)})), upper, Character({-2, 2})) == rq(-4, 3);
  });
  s.check("deg_loc vanishes for zero weights", [upper] {
    return degree_loc(simple(diag({q(1), q(2)}), I(2), Weight::zero(2)), upper, Character({-3, 3})) == 0;
  });
  s.check("deg_loc sums over punctures", [upper] {
    FilteredStokesRep f;
    f.rep.n = 2;
    f.rep.punctures = {tame(I(2), I(2)), tame(I(2), I(2))};
    f.weights = {w({rq(1, 3), 0}), w({0, rq(-1, 3)})};
    return degree_loc(f, upper, Character({-1, 1})) == rq(-2, 3);
  });
  s.check("degree zero for (a, -a)", [] { return degree_zero(simple(I(2), I(2), w({rq(1, 3), rq(-1, 3)}))); });
  s.check("degree nonzero for (1/2, 0)", [] { return !degree_zero(simple(I(2), I(2), w({rq(1, 2), 0}))); });
  s.check("degree zero across two punctures", [] {
    FilteredStokesRep f;
    f.rep.n = 2;
    f.rep.punctures = {tame(I(2), I(2)), tame(I(2), I(2))};
    f.weights = {w({rq(1, 3), 0}), w({rq(-1, 3), 0})};
    return degree_zero(f);
  });
  s.check("diagonal with (a, -a) is unstable", [] {
    return check_stability(simple(diag({q(1), q(2)}), diag({q(3), q(5)}), w({rq(1, 4), rq(-1, 4)}))).status ==
           Stability::kUnstable;
  });
  s.check("cycle plus unipotent is stable", [] {
    auto f = simple(permutation({1, 2, 0}), I(3) + E(3, 0, 1) + E(3, 0, 2), Weight::zero(3));
    return check_stability(f).status == Stability::kStable;
  });
  s.check("diagonal with zero weights is semistable", [] {
    return check_stability(simple(diag({q(1), q(2)}), diag({q(3), q(5)}), Weight::zero(2))).status == Stability::kSemistable;
  });
}

void nahc_examples(Suite& s, unsigned bits) {
  s.section("nahc examples");
  s.check("dol of diag(l, m)", [] {
    DeRhamLocal d = local(diag({q(1, 2), q(-3)}));
    d.Q = diag_type({1, -1}, 2);
    auto r = dR_to_Dol(d);
    return r.alpha == w({rq(1, 2), rq(-3)}) && r.residue == diag({q(1, 4), q(-3, 2)}) && r.Q.Q == d.Q.Q * q(1, 2);
  });
  s.check("dol of 0", [] {
    auto r = dR_to_Dol(local(Matrix(2)));
    return r.alpha == Weight::zero(2) && r.residue.is_zero();
  });
  s.check("dol of E21", [] {
    auto r = dR_to_Dol(local(E(2, 1, 0)));
    return r.alpha == Weight::zero(2) && r.residue == E(2, 1, 0) - diag({q(1), q(-1)}) + E(2, 0, 1);
  });
  s.check("betti of diag(1/2, 0)", [bits] {
    auto b = dR_to_Betti(local(diag({q(1, 2), q(0)})), bits);
    return b.gamma == w({rq(-1, 2), 0}) && b.semisimple[0].exact && *b.semisimple[0].exact == GaussRat(-1) &&
           b.semisimple[1].exact && *b.semisimple[1].exact == GaussRat(1);
  });
  s.check("betti of 0", [bits] {
    auto b = dR_to_Betti(local(Matrix(2), {rq(1, 5), rq(-1, 5)}), bits);
    return b.gamma == w({rq(1, 5), rq(-1, 5)}) && b.unipotent.size() == 1 && b.unipotent[0] == I(2);
  });
  s.check("betti of E21", [bits] {
    auto b = dR_to_Betti(local(E(2, 1, 0)), bits);
    return b.gamma == Weight::zero(2) && b.unipotent.size() == 2 && b.unipotent[1] == E(2, 1, 0) * gi(0, -2);
  });
  s.check("round trip on diag(1/2, 0)", [bits] { return roundtrip_weight_check(local(diag({q(1, 2), q(0)})), bits); });
  s.check("round trip on 0", [bits] { return roundtrip_weight_check(local(Matrix(2), {rq(2, 3), rq(1, 7)}), bits); });
  IrregularType none = IrregularType::from_diagonal({LaurentSeries::zero()});
  s.check("oracle b = 0", [none] { return std::abs(rank1_monodromy_oracle(0, none) - 1.0) < 1e-10; });
  s.check("oracle b = 1/2", [none] { return std::abs(rank1_monodromy_oracle(q(1, 2), none) + 1.0) < 1e-8; });
  s.check("oracle b = 1/3, Q = -1/z", [] {
    auto m = rank1_monodromy_oracle(q(1, 3), IrregularType::from_diagonal({LaurentSeries::monomial(-1, -1)}));
    return std::abs(m - std::polar(1.0, kLoopOrientation * 2 * std::acos(-1.0) / 3)) < 1e-8;
  });
}

void metric_examples(Suite& s) {
  s.section("metric examples");
  s.check("d(M t) = -M t^2", [] {
    return t_derivative(TPoly::monomial(E(2, 0, 1), 1)) == TPoly::monomial(E(2, 0, 1) * q(-1), 2);
  });
  s.check("d(M) = 0", [] { return t_derivative(TPoly::monomial(I(2), 0)).is_zero(); });
  s.check("d(M t^2) = -2M t^3", [] {
    return t_derivative(TPoly::monomial(E(2, 0, 1), 2)) == TPoly::monomial(E(2, 0, 1) * q(-2), 3);
  });
  auto all_hold = [](const Sl2Data& t) {
    auto r = sl2_identity_suite(t);
    return r.size() == 10 && std::all_of(r.begin(), r.end(), [](const IdentityCheck& c) { return c.holds; });
  };
  s.check("identities for the standard 2x2 triple", [all_hold] {
    bool direct = (I(2) + E(2, 0, 1)) * diag({q(1), q(-1)}) * (I(2) - E(2, 0, 1)) == diag({q(1), q(-1)}) - E(2, 0, 1) * q(2);
    return direct && all_hold(sl2_complete(E(2, 1, 0)));
  });
  s.check("identities for the zero triple", [all_hold] { return all_hold(sl2_complete(Matrix(2))); });
  s.check("identities for the 3x3 Jordan triple", [all_hold] { return all_hold(sl2_complete(E(3, 1, 0) + E(3, 2, 1))); });
  s.check("pseudo-curvature vanishes for the 2x2 triple", [] { return pseudo_curvature(metric(E(2, 1, 0), Matrix(2))).is_zero(); });
  s.check("pseudo-curvature vanishes for Y = 0", [] {
    return pseudo_curvature(metric(Matrix(2), diag({q(1, 3), gi(1, 2)}), {rq(1, 4), 0})).is_zero();
  });
  s.check("corrupted H is detected", [] {
    auto d = metric(E(2, 1, 0), Matrix(2));
    d.triple.H = d.triple.H + E(2, 0, 0);
    return !d.valid() && !pseudo_curvature(d).is_zero();
  });
  s.check("curvature in e_0 is 2H t^2 (2x2)", [] {
    return curvature_e0(metric(E(2, 1, 0), Matrix(2))) == TPoly::monomial(diag({q(2), q(-2)}), 2);
  });
  s.check("curvature in e_0 vanishes for the zero triple", [] { return curvature_e0(metric(Matrix(2), Matrix(2))).is_zero(); });
  s.check("curvature in e_0 is 2H t^2 (3x3)", [] {
    return curvature_e0(metric(E(3, 1, 0) + E(3, 2, 1), Matrix(3))) == TPoly::monomial(diag({q(4), q(0), q(-4)}), 2);
  });
  s.check("Chern coefficient, zero triple", [] { return chern_coefficient(metric(Matrix(2), Matrix(2))).is_zero(); });
  s.check("Chern coefficient, 2x2 triple", [] {
    TPoly expect = TPoly::monomial(E(2, 1, 0) * q(-1), 0) + TPoly::monomial(diag({q(2), q(-2)}), 1) +
                   TPoly::monomial(E(2, 0, 1) * q(2), 2);
    return chern_coefficient(metric(E(2, 1, 0), Matrix(2))) == expect;
  });
  s.check("dbar of the Chern coefficient is the e-frame curvature", [] {
    auto d = metric(E(2, 1, 0), Matrix(2));
    return curvature_e(d) == TPoly::monomial(diag({q(2), q(-2)}), 2) + TPoly::monomial(E(2, 0, 1) * q(4), 3);
  });
  s.check("Higgs residue Y - H + X", [] {
    auto h = higgs_extraction(metric(E(2, 1, 0), Matrix(2)));
    return h.phi == TPoly::monomial(E(2, 1, 0) * q(-1), 1) && h.residue == E(2, 1, 0) - diag({q(1), q(-1)}) + E(2, 0, 1);
  });
  s.check("Higgs data of the zero triple vanish", [] {
    auto h = higgs_extraction(metric(Matrix(2), Matrix(2)));
    return h.phi.is_zero() && h.phi_star.is_zero() && h.dbar.is_zero() && h.residue.is_zero();
  });
  s.check("semisimple row: residue (s - beta)/2", [] {
    auto h = higgs_extraction(metric(Matrix(2), diag({q(1, 3), q(-1)}), {rq(1, 5), rq(-1, 5)}));
    return h.residue == diag({q(1, 3) - q(1, 5), q(-1) + q(1, 5)}) * q(1, 2);
  });
  s.check("weight jump for beta = (1/2, 0)", [] {
    auto r = weight_jump_check(metric(Matrix(2), Matrix(2), {rq(1, 2), 0}));
    return r.passed && std::abs(r.de_rham_exponents[0] - 1) < 0.02 && std::abs(r.de_rham_exponents[1]) < 0.02;
  });
  s.check("weight jump for beta = 0", [] { return weight_jump_check(metric(E(2, 1, 0), Matrix(2))).passed; });
  s.check("weight jump doubles Re s", [] {
    auto r = weight_jump_check(metric(Matrix(2), diag({q(1, 3), q(0)}), {rq(-1, 4), rq(1, 4)}));
    return r.passed && std::abs(r.dolbeault_exponents[0] - 2.0 / 3) < 0.02;
  });
}

// ------------------------------------------------------------ seeded properties

void seeded_properties(Suite& s, const SelftestOptions& o) {
  FixtureRng rng(o.seed);
  const int rounds = o.rounds;

  s.section("exactfield properties");
  for (int t = 0; t < rounds; ++t) {
    GaussRat a = rng.gauss(10, true), b = rng.gauss(10, true), c = rng.gauss(10, true);
    s.check("field axioms #" + std::to_string(t), [=] {
      bool inv = a.is_zero() || a * a.inverse() == GaussRat(1);
      return (a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c && inv;
    });
    Matrix m = rng.matrix(3);
    s.check("inverse of a random matrix #" + std::to_string(t), [=] {
      return determinant(m).is_zero() || inverse(m) * m == I(3);
    });
    Matrix n = random_nilpotent(rng, 3);
    s.check("exp(N) exp(-N) = I #" + std::to_string(t), [=] {
      return mat_mul(mat_exp_nilpotent(lm(n)), mat_exp_nilpotent(lm(n * q(-1)))) == LaurentMatrix::identity(3);
    });
  }

  s.section("rootdata properties");
  for (int t = 0; t < rounds; ++t) {
    std::size_t n = 2 + static_cast<std::size_t>(rng.integer(0, 1));
    Weight th = random_small_weight(rng, n);
    auto g = random_parahoric_gauge(rng, n, 8), h = random_parahoric_gauge(rng, n, 8);
    s.check("parahoric subgroup closure #" + std::to_string(t), [=] {
      return parahoric_member(g, th) && parahoric_member(h, th) && parahoric_member(mat_mul(g, h), th);
    });
  }

  s.section("connection properties");
  for (int t = 0; t < rounds; ++t) {
    std::size_t n = 2 + static_cast<std::size_t>(rng.integer(0, 1));
    Weight th = t % 2 ? random_small_weight(rng, n) : Weight::zero(n);
    auto c = random_connection(rng, n, static_cast<int>(rng.integer(1, 3)), th);
    s.check("reduction invariants and equivalence #" + std::to_string(t), [=] {
      auto red = canonical_reduce(c, th, o.trunc);
      auto again = canonical_reduce(MeroConnection(red.form.as_series()), th, o.trunc);
      return red.form.invariants_hold() && gauge_orbit_equal(c, red.canonical_connection(), red.gauge) &&
             parahoric_member(red.gauge, th) && again.gauge == LaurentMatrix::identity(n);
    });
    Weight z = Weight::zero(n);
    auto c0 = random_connection(rng, n, static_cast<int>(rng.integer(1, 3)), z);
    auto g = random_parahoric_gauge(rng, n, 16);
    s.check("irregular type gauge invariance #" + std::to_string(t), [=] {
      return extract_irregular_type(gauge_act(g, c0, 16), z, o.trunc) == extract_irregular_type(c0, z, o.trunc);
    });
  }

  s.section("stokes properties");
  for (int t = 0; t < rounds; ++t) {
    std::size_t n = 2 + static_cast<std::size_t>(rng.integer(0, 1));
    auto qt = random_irregular_type(rng, n, static_cast<int>(rng.integer(2, 3)), t % 2 == 0);
    s.check("rotation invariance, integral l, dimension count #" + std::to_string(t), [=] {
      auto d = anti_stokes(qt);
      if (!d.l || !rotation_invariant(d)) return false;
      if (static_cast<int>(d.directions.size()) != 2 * d.k * *d.l) return false;
      for (std::size_t b = 0; b < d.directions.size(); ++b) {
        auto c = stokes_dim_check(d, half_periods(d, b));
        if (c.lhs != c.rhs) return false;
      }
      return true;
    });
  }

  s.section("betti properties");
  for (int t = 0; t < rounds; ++t) {
    Rational x = rng.nonzero_rational(), a = rng.nonzero_rational();
    Matrix g = rng.matrix(2, 6);
    Matrix k = Matrix::diagonal({GaussRat(rng.nonzero_rational()), GaussRat(rng.nonzero_rational())});
    s.check("action preserves the relation #" + std::to_string(t), [=] {
      if (sgn(1 + a * x) == 0 || determinant(g).is_zero()) return true;
      Rational b = -x / (1 + a * x);
      if (sgn(1 + a * b) == 0) return true;
      auto rho = genus0_gl2_solution(x, a);
      rho.handles.push_back({I(2), I(2)});
      auto moved = group_act(g, {k}, rho);
      return check_relation(rho) && check_relation(moved) && moved.structurally_valid();
    });
  }

  s.section("nahc properties");
  for (int t = 0; t < rounds; ++t) {
    std::size_t n = 2 + static_cast<std::size_t>(rng.integer(0, 2));
    GaussRat a(rng.rational(4), rng.rational(4) / 8), b(rng.rational(4), rng.rational(4) / 8);
    std::vector<GaussRat> sv;
    for (std::size_t i = 0; i < n; ++i) sv.push_back(i + 1 < n ? a : b);
    Matrix sm = Matrix::diagonal(sv), y(n);
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = i + 1; j + 1 < n; ++j) y(i, j) = rng.gauss(3);
    std::vector<Rational> beta;
    for (std::size_t i = 0; i < n; ++i) beta.push_back(rng.rational(3));
    s.check("dictionary identities #" + std::to_string(t), [=] {
      auto d = local(sm + y, beta);
      auto dol = dR_to_Dol(d);
      for (std::size_t i = 0; i < n; ++i)
        if (dol.alpha[i] != sv[i].re()) return false;
      return roundtrip_weight_check(d, o.precision_bits) && monodromy_factorization_error(d) < 1e-10;
    });
  }

  s.section("metric properties");
  for (int t = 0; t < rounds; ++t) {
    std::size_t n = 2 + static_cast<std::size_t>(rng.integer(0, 2));
    Matrix y = random_nilpotent(rng, n);
    GaussRat lam = rng.gauss(4, true);
    Rational b = rng.rational(2);
    s.check("local model identities #" + std::to_string(t), [=] {
      auto d = metric(y, I(n) * lam, std::vector<Rational>(n, b));
      auto r = sl2_identity_suite(d.triple);
      bool ids = std::all_of(r.begin(), r.end(), [](const IdentityCheck& c) { return c.holds; });
      auto h = higgs_extraction(d);
      auto dol = dR_to_Dol(local(d.triple.s + y, d.beta.v));
      return d.valid() && ids && pseudo_curvature(d).is_zero() &&
             curvature_e0(d) == TPoly::monomial(d.triple.H * q(2), 2) && h.residue == dol.residue;
    });
  }
}

}  // namespace

SelftestOutcome run_selftest(const SelftestOptions& o) {
  Suite s;
  exactfield_examples(s);
  rootdata_examples(s);
  connection_examples(s, o.trunc);
  stokes_examples(s);
  betti_examples(s);
  nahc_examples(s, o.precision_bits);
  metric_examples(s);
  seeded_properties(s, o);

  Json head = io::report("selftest");
  head["seed"] = o.seed;
  head["trunc"] = o.trunc;
  head["precision"] = o.precision_bits;
  head["rounds"] = o.rounds;
  return s.finish(head);
}

}  // namespace wildhodge
