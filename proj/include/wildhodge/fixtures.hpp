#pragma once

// Seeded random inputs shared by the self-test, the acceptance runner and the
// unit tests.

#include <cstdint>
#include <random>

#include "wildhodge/connection.hpp"
#include "wildhodge/rootdata.hpp"

namespace wildhodge {

class FixtureRng {
 public:
  explicit FixtureRng(std::uint64_t seed) : gen_(seed) {}

  long integer(long lo, long hi);
  /// p/q with |p| <= bound, 1 <= q <= bound.
  Rational rational(long bound = 10);
  Rational nonzero_rational(long bound = 10);
  GaussRat gauss(long bound = 10, bool complex = false);
  Matrix matrix(std::size_t n, long bound = 10, bool complex = false);
  /// Distinct nonzero rationals.
  std::vector<Rational> distinct(std::size_t n, long bound = 10);

 private:
  std::mt19937_64 gen_;
};

/// theta with entries in (-1/2, 1/2]: denominators <= 6, so max - min < 1.
Weight random_small_weight(FixtureRng& rng, std::size_t n);

/// d + B dz/z with diagonal polar part of order `pole` whose leading term is
/// regular semisimple, and an exact holomorphic tail of a few terms chosen
/// inside g_theta(K).
MeroConnection random_connection(FixtureRng& rng, std::size_t n, int pole, const Weight& theta,
                                 int tail_terms = 3);

/// d * prod_{m=1..2} exp(X_m z^m) with d diagonal; an element of G_theta(K)
/// for every valid theta. Truncated at `cap`.
LaurentMatrix random_parahoric_gauge(FixtureRng& rng, std::size_t n, int cap);

/// Diagonal irregular type with regular semisimple leading coefficient.
IrregularType random_irregular_type(FixtureRng& rng, std::size_t n, int degree, bool complex = true);

}  // namespace wildhodge
