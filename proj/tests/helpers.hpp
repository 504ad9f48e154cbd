#pragma once

#include <random>
#include <vector>

#include "wildhodge/exactfield.hpp"

namespace th {

using namespace wildhodge;

inline GaussRat q(long p, long d = 1) { return GaussRat(Rational(p, d)); }
inline GaussRat gi(long re, long im) { return GaussRat(Rational(re), Rational(im)); }

inline Matrix mat(std::size_t n, std::initializer_list<long> v) {
  std::vector<GaussRat> e;
  for (long x : v) e.emplace_back(x);
  return Matrix(n, e);
}

inline Matrix diag(std::initializer_list<GaussRat> d) { return Matrix::diagonal(d); }

inline Matrix E(std::size_t n, std::size_t i, std::size_t j) { return Matrix::unit(n, i, j); }

inline LaurentMatrix lm(const Matrix& m, int exponent = 0, int trunc = kExact) {
  return LaurentMatrix::from_constant(m, exponent, trunc);
}

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(unsigned long seed) : gen(seed) {}
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); }
  Rational rational(long bound = 10) {
    long p = integer(-bound, bound), d = integer(1, bound);
    Rational r(p, d);
    r.canonicalize();
    return r;
  }
  GaussRat gauss(long bound = 10, bool complex = true) {
    return complex ? GaussRat(rational(bound), rational(bound)) : GaussRat(rational(bound));
  }
  Matrix matrix(std::size_t n, long bound = 10, bool complex = false) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = gauss(bound, complex);
    return m;
  }
};

}  // namespace th
