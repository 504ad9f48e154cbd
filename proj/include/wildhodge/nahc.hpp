#pragma once

// Local data on the de Rham, Dolbeault and Betti sides and the translations
// between them.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "wildhodge/connection.hpp"
#include "wildhodge/rootdata.hpp"

namespace wildhodge {

struct DeRhamLocal {
  Weight beta;
  Matrix residue;  // Levi-factor normal form: diagonal semisimple part
  IrregularType Q;
};

struct DolbeaultLocal {
  Weight alpha;
  Matrix residue;
  IrregularType Q;  // half of the de Rham irregular type
};

/// exp(-2 pi i s_j) for one diagonal entry of s.
struct MonodromyEigenvalue {
  std::complex<double> value;
  std::string re, im;           // decimal expansions at the requested precision
  std::optional<Rational> turns;  // s_j when it is rational: value = exp(-2 pi i turns)
  std::optional<GaussRat> exact;  // when the value is 1, -1, i or -i
};

struct BettiLocal {
  Weight gamma;
  std::vector<MonodromyEigenvalue> semisimple;  // diagonal factor exp(-2 pi i s)
  /// exp(-2 pi i Y) = sum_k pi^k unipotent[k], each term exact.
  std::vector<Matrix> unipotent;
  IrregularType Q;

  /// The full monodromy exp(-2 pi i s) exp(-2 pi i Y), row-major, in double precision.
  std::vector<std::complex<double>> numeric_monodromy() const;
};

/// Jordan decomposition plus sl2 completion of a residue, with the
/// semisimple part required to be diagonal.
Sl2Data residue_structure(const Matrix& residue);

DolbeaultLocal dR_to_Dol(const DeRhamLocal& d);
BettiLocal dR_to_Betti(const DeRhamLocal& d, unsigned precision_bits = 128);
bool roundtrip_weight_check(const DeRhamLocal& d, unsigned precision_bits = 128);

IrregularType scale_irregular_type(const IrregularType& q, const GaussRat& c);

/// max-entry distance between exp(-2 pi i (s + Y)) (Pade/Schur reference) and
/// the factored monodromy.
double monodromy_factorization_error(const DeRhamLocal& d);

/// The rank-one oracle continues f along a clockwise unit loop; this is the
/// sign s with multiplier exp(s 2 pi i b), matching exp(-2 pi i residue).
inline constexpr int kLoopOrientation = -1;

/// Continues a solution of f' = (q'(z) + b/z) f once around |z| = 1 with
/// orientation kLoopOrientation by RK4 with step doubling, divides out
/// exp(q) and returns the multiplier. q must be 1 x 1.
std::complex<double> rank1_monodromy_oracle(const GaussRat& b, const IrregularType& q, double tol = 1e-12);

}  // namespace wildhodge
