#include "wildhodge/fixtures.hpp"

#include <algorithm>

namespace wildhodge {

long FixtureRng::integer(long lo, long hi) {
  // modulo reduction keeps the stream identical across standard libraries
  auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<long>(gen_() % span);
}

Rational FixtureRng::rational(long bound) {
  Rational r(integer(-bound, bound), integer(1, bound));
  r.canonicalize();
  return r;
}

Rational FixtureRng::nonzero_rational(long bound) {
  for (;;) {
    Rational r = rational(bound);
    if (sgn(r) != 0) return r;
  }
}

GaussRat FixtureRng::gauss(long bound, bool complex) {
  Rational re = rational(bound);
  return complex ? GaussRat(re, rational(bound)) : GaussRat(re);
}

Matrix FixtureRng::matrix(std::size_t n, long bound, bool complex) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = gauss(bound, complex);
  return m;
}

std::vector<Rational> FixtureRng::distinct(std::size_t n, long bound) {
  std::vector<Rational> out;
  while (out.size() < n) {
    Rational r = nonzero_rational(bound);
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  }
  return out;
}

Weight random_small_weight(FixtureRng& rng, std::size_t n) {
  std::vector<Rational> v(n);
  for (auto& x : v) {
    long d = rng.integer(1, 6);
    x = Rational(rng.integer(-(d - 1) / 2, d / 2), d);
    x.canonicalize();
  }
  return Weight(v);
}

MeroConnection random_connection(FixtureRng& rng, std::size_t n, int pole, const Weight& theta, int tail_terms) {
  std::vector<Matrix> coeffs;
  for (int j = pole; j >= 1; --j) {
    std::vector<GaussRat> d;
    if (j == pole) {
      for (const auto& r : rng.distinct(n)) d.emplace_back(r);
    } else {
      for (std::size_t i = 0; i < n; ++i) d.push_back(rng.gauss());
    }
    coeffs.push_back(Matrix::diagonal(d));
  }
  for (int m = 0; m < tail_terms; ++m) {
    Matrix c = rng.matrix(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (theta[i] - theta[k] + m < 0) c(i, k) = 0;
    coeffs.push_back(c);
  }
  return MeroConnection(LaurentMatrix::from_coefficients(coeffs, -pole));
}

LaurentMatrix random_parahoric_gauge(FixtureRng& rng, std::size_t n, int cap) {
  std::vector<GaussRat> d;
  for (std::size_t i = 0; i < n; ++i) d.emplace_back(rng.nonzero_rational(5));
  LaurentMatrix h = LaurentMatrix::from_constant(Matrix::diagonal(d));
  for (int m = 1; m <= 2; ++m) {
    LaurentMatrix x = LaurentMatrix::from_constant(rng.matrix(n, 5), m);
    h = mat_mul(h, mat_exp_nilpotent(x, cap)).truncated(cap);
  }
  return h;
}

IrregularType random_irregular_type(FixtureRng& rng, std::size_t n, int degree, bool complex) {
  std::vector<LaurentSeries> q(n);
  std::vector<GaussRat> lead;
  while (lead.size() < n) {
    GaussRat c = rng.gauss(5, complex);
    if (c.is_zero() || std::find(lead.begin(), lead.end(), c) != lead.end()) continue;
    lead.push_back(c);
  }
  for (std::size_t i = 0; i < n; ++i) {
    q[i] = LaurentSeries::monomial(lead[i], -degree);
    for (int e = -degree + 1; e < 0; ++e) q[i] += LaurentSeries::monomial(rng.gauss(5, complex), e);
  }
  return IrregularType::from_diagonal(q);
}

}  // namespace wildhodge
