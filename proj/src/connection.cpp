#include "wildhodge/connection.hpp"

#include <algorithm>
#include <boost/multiprecision/mpfr.hpp>
#include <map>
#include <stdexcept>
#include <tuple>

namespace wildhodge {

int MeroConnection::pole_order() const {
  int v = B.known_valuation();
  return v >= 0 ? 0 : -v;
}

LaurentMatrix CanonicalForm::as_series() const {
  std::vector<Matrix> coeffs = polar;
  coeffs.push_back(residue);
  return LaurentMatrix::from_coefficients(coeffs, -pole_order());
}

bool CanonicalForm::invariants_hold() const {
  std::vector<const Matrix*> all;
  for (const auto& m : polar) {
    if (!m.is_diagonal()) return false;
    all.push_back(&m);
  }
  all.push_back(&residue);
  for (std::size_t a = 0; a < all.size(); ++a)
    for (std::size_t b = a + 1; b < all.size(); ++b)
      if (!commutator(*all[a], *all[b]).is_zero()) return false;
  return true;
}

IrregularType IrregularType::from_diagonal(const std::vector<LaurentSeries>& q) {
  IrregularType t;
  t.Q = LaurentMatrix(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!q[i].is_exact()) throw std::invalid_argument("irregular type entries must be exact");
    if (!q[i].is_zero() && q[i].order_max() >= 0)
      throw std::invalid_argument("irregular type may only contain negative exponents");
    t.Q.set(i, i, q[i]);
    if (!q[i].is_zero()) t.degree = std::max(t.degree, -q[i].valuation());
  }
  t.trivial = t.Q.is_zero();
  return t;
}

bool Sl2Data::relations_hold() const {
  return commutator(H, X) == X * GaussRat(2) && commutator(H, Y) == Y * GaussRat(-2) && commutator(X, Y) == H;
}

MeroConnection gauge_act(const LaurentMatrix& g, const LaurentMatrix& g_inv, const MeroConnection& c) {
  if (g.size() != c.size() || g_inv.size() != c.size())
    throw std::invalid_argument("dimension mismatch in gauge action");
  LaurentMatrix dg = g.z_derivative();
  LaurentMatrix b = mat_mul(mat_mul(g, c.B), g_inv) - mat_mul(dg, g_inv);
  return MeroConnection(std::move(b));
}

MeroConnection gauge_act(const LaurentMatrix& g, const MeroConnection& c, int cap) {
  return gauge_act(g, mat_inv(g, add_orders(cap, c.pole_order() + 1)), c);
}

bool gauge_orbit_equal(const MeroConnection& c1, const MeroConnection& c2, const LaurentMatrix& g) {
  if (g.size() != c1.size() || c1.size() != c2.size()) return false;
  MeroConnection r;
  try {
    r = gauge_act(g, c1, std::max(c2.B.trunc() == kExact ? kDefaultTrunc : c2.B.trunc(), kDefaultTrunc));
  } catch (const Error&) {
    return false;
  }
  int common = std::min(r.B.trunc(), c2.B.trunc());
  if (common != kExact && common <= -std::max(r.pole_order(), c2.pole_order())) return false;
  if (r.pole_order() != c2.pole_order()) return false;
  return r.B.agrees_below(c2.B, common);
}

namespace {

std::vector<Matrix> polar_coefficients(const LaurentMatrix& b, int pole) {
  std::vector<Matrix> out;
  for (int e = -pole; e < 0; ++e) out.push_back(b.coefficient(e));
  return out;
}

// Applies the gauge exp(X) to B and accumulates it into g.
struct GaugeRunner {
  LaurentMatrix B, g;
  int keep, cap, steps = 0;

  void apply(const LaurentMatrix& x) {
    LaurentMatrix e = mat_exp_nilpotent(x, cap);
    LaurentMatrix ei = mat_exp_nilpotent(-x, cap);
    B = gauge_act(e, ei, MeroConnection(B)).B.truncated(keep);
    g = mat_mul(e, g).truncated(cap);
    ++steps;
  }
};

const char* kShapeError =
    "input not in irregular-type shape; run with a semisimple-leading-coefficient preprocessor or reject "
    "(ramified case out of scope)";

}  // namespace

Reduction canonical_reduce(const MeroConnection& c, const Weight& theta, int trunc) {
  const std::size_t n = c.size();
  if (theta.size() != n) throw std::invalid_argument("weight dimension does not match the connection");
  if (!theta.is_valid()) throw std::invalid_argument("weight violates r(theta) <= 1");
  const int P = c.pole_order();
  const int T = std::min(trunc, c.B.trunc());
  if (T < 1) throw Error("truncation order too low to determine the residue");

  std::vector<Matrix> polar = polar_coefficients(c.B, P);
  for (const auto& m : polar)
    if (!m.is_diagonal()) throw Error(kShapeError);
  LaurentMatrix polar_part =
      P > 0 ? LaurentMatrix::from_coefficients(polar, -P) : LaurentMatrix(n);
  if (!lie_parahoric_member(c.B - polar_part, theta))
    throw Error("precondition violation: nonnegative part of B lies outside g_theta(K)");

  // b[j-1][i] = i-th diagonal entry of B_{-j}
  std::vector<std::vector<GaussRat>> b(static_cast<std::size_t>(P));
  for (int j = 1; j <= P; ++j) b[static_cast<std::size_t>(j - 1)] = polar[static_cast<std::size_t>(P - j)].diag();
  auto killing_order = [&](std::size_t i, std::size_t k) -> int {
    for (int j = P; j >= 1; --j)
      if (b[static_cast<std::size_t>(j - 1)][i] != b[static_cast<std::size_t>(j - 1)][k]) return j;
    return 0;
  };

  struct Slot {
    Rational mu;
    int m;
    std::size_t i, k;
  };
  std::vector<Slot> slots;
  for (int m = 0; m < T; ++m)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) slots.push_back({theta[i] - theta[k] + m, m, i, k});
  std::stable_sort(slots.begin(), slots.end(), [](const Slot& x, const Slot& y) {
    if (x.mu != y.mu) return x.mu < y.mu;
    if (x.m != y.m) return x.m < y.m;
    return std::tie(x.i, x.k) < std::tie(y.i, y.k);
  });

  GaugeRunner run{c.B.truncated(T), LaurentMatrix::identity(n), T, T + P + 1};

  for (std::size_t s0 = 0; s0 < slots.size();) {
    std::size_t s1 = s0;
    while (s1 < slots.size() && slots[s1].mu == slots[s0].mu) ++s1;

    // Off-centralizer pieces: [V z^{m+j}, B_{-j} z^{-j}] cancels them. Pieces
    // of one grade do not interact, so each is its own elementary factor.
    for (std::size_t s = s0; s < s1; ++s) {
      const Slot& sl = slots[s];
      int j = killing_order(sl.i, sl.k);
      if (j == 0) continue;
      GaussRat coef = run.B(sl.i, sl.k).coeff(sl.m);
      if (coef.is_zero()) continue;
      auto jj = static_cast<std::size_t>(j - 1);
      GaussRat v = coef / (b[jj][sl.i] - b[jj][sl.k]);
      run.apply(LaurentMatrix::from_constant(Matrix::unit(n, sl.i, sl.k) * v, sl.m + j));
    }

    // Centralizer pieces of positive exponent: m X + [B_0, X] = C on this grade.
    std::vector<const Slot*> cs;
    bool any = false;
    for (std::size_t s = s0; s < s1; ++s) {
      const Slot& sl = slots[s];
      if (sl.m == 0 || killing_order(sl.i, sl.k) != 0) continue;
      cs.push_back(&sl);
      any = any || !run.B(sl.i, sl.k).coeff(sl.m).is_zero();
    }
    if (any) {
      const Matrix b0 = run.B.coefficient(0);
      std::map<std::tuple<int, std::size_t, std::size_t>, std::size_t> index;
      for (std::size_t u = 0; u < cs.size(); ++u) index[{cs[u]->m, cs[u]->i, cs[u]->k}] = u;
      Matrix sys(cs.size());
      std::vector<GaussRat> rhs(cs.size());
      for (std::size_t u = 0; u < cs.size(); ++u) {
        const Slot& sl = *cs[u];
        rhs[u] = run.B(sl.i, sl.k).coeff(sl.m);
        sys(u, u) += GaussRat(sl.m);
        for (std::size_t l = 0; l < n; ++l) {
          auto a = index.find({sl.m, l, sl.k});
          if (a != index.end()) sys(u, a->second) += b0(sl.i, l);
          auto d = index.find({sl.m, sl.i, l});
          if (d != index.end()) sys(u, d->second) -= b0(l, sl.k);
        }
      }
      std::vector<GaussRat> x;
      try {
        x = solve(sys, rhs);
      } catch (const Error&) {
        throw Error("resonant residue: eigenvalues of the residue differ by a positive integer on the "
                    "centralizer of the polar part");
      }
      std::map<int, Matrix> by_exponent;
      for (std::size_t u = 0; u < cs.size(); ++u) {
        if (x[u].is_zero()) continue;
        auto it = by_exponent.try_emplace(cs[u]->m, Matrix(n)).first;
        it->second(cs[u]->i, cs[u]->k) = x[u];
      }
      LaurentMatrix xm(n);
      for (const auto& [m, coeffs] : by_exponent) xm += LaurentMatrix::from_constant(coeffs, m);
      if (!xm.is_zero()) run.apply(xm);
    }
    s0 = s1;
  }

  Reduction r;
  r.form.polar = polar;
  r.form.residue = run.B.coefficient(0);
  r.gauge = run.g;
  r.trunc = T;
  r.gauge_steps = run.steps;
  if (!run.B.agrees_below(r.form.as_series(), T)) throw Error("normalization did not reach canonical form");
  return r;
}

std::pair<MeroConnection, LaurentMatrix> normalize_irregular_shape(const MeroConnection& c, int trunc) {
  const std::size_t n = c.size();
  const int P = c.pole_order();
  if (P == 0) return {c, LaurentMatrix::identity(n)};
  const int T = std::min(trunc, c.B.trunc());
  if (T <= 0) throw Error("truncation order too low for the polar part");
  const Matrix lead = c.B.coefficient(-P);
  if (!lead.is_diagonal()) throw Error(kShapeError);
  const auto b = lead.diag();
  GaugeRunner run{c.B.truncated(T), LaurentMatrix::identity(n), T, T + P + 1};
  for (int e = -P + 1; e < 0; ++e)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        if (i == k || b[i] == b[k]) continue;
        GaussRat coef = run.B(i, k).coeff(e);
        if (coef.is_zero()) continue;
        run.apply(LaurentMatrix::from_constant(Matrix::unit(n, i, k) * (coef / (b[i] - b[k])), e + P));
      }
  for (int e = -P; e < 0; ++e)
    if (!run.B.coefficient(e).is_diagonal()) throw Error(kShapeError);
  return {MeroConnection(run.B), run.g};
}

IrregularType irregular_type_of(const CanonicalForm& f) {
  const std::size_t n = f.residue.size();
  std::vector<LaurentSeries> q(n);
  for (int j = 1; j <= f.pole_order(); ++j) {
    const Matrix& bj = f.polar_coefficient(j);
    for (std::size_t i = 0; i < n; ++i)
      q[i] += LaurentSeries::monomial(bj(i, i) / GaussRat(-j), -j);
  }
  return IrregularType::from_diagonal(q);
}

IrregularType extract_irregular_type(const MeroConnection& c, const Weight& theta, int trunc) {
  if (theta.size() != c.size()) throw std::invalid_argument("weight and connection sizes differ");
  if (!theta.is_valid()) throw Error("weight is not valid: some root takes a value above 1");
  // Q does not see the weight, and a parahoric gauge can leave the
  // nonnegative part outside g_theta(K) while it stays in g(R).
  auto shaped = normalize_irregular_shape(c, trunc);
  return irregular_type_of(canonical_reduce(shaped.first, Weight::zero(c.size()), trunc).form);
}

// ------------------------------------------------------------ Jordan / sl2

namespace {

using Poly = std::vector<GaussRat>;  // low degree first

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * GaussRat(static_cast<long>(k)));
  trim(d);
  return d;
}

// quotient and remainder
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  if (b.empty()) throw Error("polynomial division by zero");
  trim(a);
  Poly quo(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  GaussRat lead_inv = b.back().inverse();
  while (a.size() >= b.size() && !a.empty()) {
    std::size_t shift = a.size() - b.size();
    GaussRat f = a.back() * lead_inv;
    quo[shift] = f;
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= f * b[k];
    a.pop_back();
    trim(a);
  }
  trim(quo);
  return {quo, a};
}

Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    GaussRat inv = a.back().inverse();
    for (auto& x : a) x *= inv;
  }
  return a;
}

GaussRat evaluate(const Poly& p, const GaussRat& x) {
  GaussRat acc;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
  return acc;
}

using Real = boost::multiprecision::mpfr_float_100;

struct Cx {
  Real re, im;
};
Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
Cx operator*(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
Cx operator/(const Cx& a, const Cx& b) {
  Real d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
Real abs2(const Cx& a) { return a.re * a.re + a.im * a.im; }

Real to_real(const Rational& q) {
  Real num(q.get_num().get_str()), den(q.get_den().get_str());
  return num / den;
}

mpz_class round_to_integer(const Real& x) {
  Real r = boost::multiprecision::round(x);
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), r.backend().data(), MPFR_RNDN);
  return z;
}

// Durand-Kerner on a square-free polynomial.
std::vector<Cx> numeric_roots(const Poly& p) {
  const std::size_t d = p.size() - 1;
  std::vector<Cx> c(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) c[k] = {to_real(p[k].re()), to_real(p[k].im())};
  Cx lead = c.back();
  for (auto& x : c) x = x / lead;
  auto eval = [&](const Cx& x) {
    Cx acc{Real(0), Real(0)};
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
    return acc;
  };
  std::vector<Cx> z(d);
  Cx seed{Real("0.4"), Real("0.9")}, cur{Real(1), Real(0)};
  for (std::size_t k = 0; k < d; ++k) {
    z[k] = cur;
    cur = cur * seed;
  }
  const Real tol("1e-80");
  for (int iter = 0; iter < 5000; ++iter) {
    Real delta(0);
    for (std::size_t k = 0; k < d; ++k) {
      Cx den{Real(1), Real(0)};
      for (std::size_t j = 0; j < d; ++j)
        if (j != k) den = den * (z[k] - z[j]);
      Cx step = eval(z[k]) / den;
      z[k] = z[k] - step;
      delta = std::max(delta, abs2(step));
    }
    if (delta < tol) break;
  }
  return z;
}

}  // namespace

std::vector<GaussRat> characteristic_polynomial(const Matrix& a) {
  const std::size_t n = a.size();
  // Faddeev-LeVerrier
  Poly c(n + 1);
  c[n] = 1;
  Matrix m(n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m + Matrix::identity(n) * c[n - k + 1];
    c[n - k] = -(a * m).trace() / GaussRat(static_cast<long>(k));
  }
  return c;
}

std::vector<GaussRat> exact_eigenvalues(const Matrix& a) {
  if (a.size() == 0) return {};
  Poly p = characteristic_polynomial(a);
  Poly g = gcd(p, derivative(p));
  Poly sf = divmod(p, g).first;
  trim(sf);
  // clear denominators: Gaussian-integer coefficients
  mpz_class l = 1;
  for (const auto& x : sf) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.re().get_den_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.im().get_den_mpz_t());
  }
  for (auto& x : sf) x *= GaussRat(Rational(l));
  const GaussRat lead = sf.back();
  std::vector<GaussRat> roots;
  if (sf.size() == 2) {
    roots.push_back(-sf[0] / sf[1]);
  } else {
    Cx lc{to_real(lead.re()), to_real(lead.im())};
    for (const Cx& z : numeric_roots(sf)) {
      Cx w = lc * z;
      GaussRat cand = GaussRat(Rational(round_to_integer(w.re)), Rational(round_to_integer(w.im))) / lead;
      if (!evaluate(sf, cand).is_zero()) throw Error("eigenvalues outside coefficient field");
      if (std::find(roots.begin(), roots.end(), cand) == roots.end()) roots.push_back(cand);
    }
  }
  if (roots.size() != sf.size() - 1) throw Error("eigenvalues outside coefficient field");
  return roots;
}

std::pair<Matrix, Matrix> jordan_decompose(const Matrix& a) {
  const std::size_t n = a.size();
  std::vector<GaussRat> eig = exact_eigenvalues(a);
  Matrix basis(n), d(n);
  std::size_t col = 0;
  for (const auto& lam : eig) {
    Matrix shifted = a - Matrix::identity(n) * lam;
    for (const auto& v : nullspace(power(shifted, static_cast<unsigned>(n)))) {
      for (std::size_t r = 0; r < n; ++r) basis(r, col) = v[r];
      d(col, col) = lam;
      ++col;
    }
  }
  if (col != n) throw Error("generalized eigenspaces do not span");
  Matrix s = basis * d * inverse(basis);
  Matrix y = a - s;
  if (!commutator(s, y).is_zero() || !is_nilpotent(y)) throw Error("Jordan decomposition failed");
  return {s, y};
}

Sl2Data sl2_complete(const Matrix& y) {
  const std::size_t n = y.size();
  if (!is_nilpotent(y)) throw Error("sl2_complete needs a nilpotent matrix");
  unsigned p = 0;
  while (!power(y, p).is_zero()) ++p;  // nilpotency index
  using Vec = std::vector<GaussRat>;
  auto apply = [&](const Vec& v) {
    Vec w(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!y(i, j).is_zero() && !v[j].is_zero()) w[i] += y(i, j) * v[j];
    return w;
  };

  std::vector<std::pair<Vec, std::size_t>> tops;  // chain top and length
  for (unsigned j = p; j >= 1; --j) {
    std::vector<Vec> span = j > 1 ? nullspace(power(y, j - 1)) : std::vector<Vec>{};
    for (const auto& [w, len] : tops) {
      Vec v = w;
      for (std::size_t t = 0; t < len - j; ++t) v = apply(v);
      span.push_back(v);
    }
    std::size_t r = rank_of_vectors(span, n);
    for (const auto& cand : nullspace(power(y, j))) {
      span.push_back(cand);
      std::size_t r2 = rank_of_vectors(span, n);
      if (r2 > r) {
        tops.emplace_back(cand, j);
        r = r2;
      } else {
        span.pop_back();
      }
    }
  }

  Sl2Data out;
  out.basis = Matrix(n);
  Matrix hj(n), xj(n);
  std::size_t col = 0;
  for (const auto& [w, len] : tops) {
    Vec v = w;
    const long k = static_cast<long>(len);
    for (std::size_t t = 0; t < len; ++t) {
      for (std::size_t r = 0; r < n; ++r) out.basis(r, col + t) = v[r];
      hj(col + t, col + t) = GaussRat(k - 1 - 2 * static_cast<long>(t));
      if (t + 1 < len) {
        const long i = static_cast<long>(t) + 1;
        xj(col + t, col + t + 1) = GaussRat(i * (k - i));
      }
      v = apply(v);
    }
    out.block_sizes.push_back(len);
    col += len;
  }
  if (col != n) throw Error("Jordan chains do not span");
  Matrix binv = inverse(out.basis);
  out.Y = y;
  out.H = out.basis * hj * binv;
  out.X = out.basis * xj * binv;
  out.s = Matrix(n);
  if (!out.relations_hold()) throw Error("sl2 completion failed");
  return out;
}

}  // namespace wildhodge
