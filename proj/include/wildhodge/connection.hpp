#pragma once

// Formal meromorphic connections d + B(z) dz/z on the trivial GL_n bundle:
// gauge action, reduction to canonical form, irregular types, and the
// Jordan / sl2 structure of a residue.

#include <utility>
#include <vector>

#include "wildhodge/exactfield.hpp"
#include "wildhodge/rootdata.hpp"

namespace wildhodge {

struct MeroConnection {
  LaurentMatrix B;

  MeroConnection() = default;
  explicit MeroConnection(LaurentMatrix b) : B(std::move(b)) {}
  std::size_t size() const { return B.size(); }
  /// max(0, -val(B))
  int pole_order() const;
};

struct CanonicalForm {
  std::vector<Matrix> polar;  // B_{-n}, ..., B_{-1}
  Matrix residue;             // B_0

  int pole_order() const { return static_cast<int>(polar.size()); }
  /// Coefficient of z^{-j}, j >= 1.
  const Matrix& polar_coefficient(int j) const { return polar[polar.size() - static_cast<std::size_t>(j)]; }
  /// sum B_{-j} z^{-j} + B_0 as an exact series.
  LaurentMatrix as_series() const;
  /// Diagonal polar coefficients, all coefficients pairwise commuting.
  bool invariants_hold() const;
};

struct IrregularType {
  LaurentMatrix Q;  // diagonal, exact, only negative exponents
  int degree = 0;   // pole order of Q
  bool trivial = true;

  std::size_t size() const { return Q.size(); }
  /// The i-th diagonal entry q_i(z).
  const LaurentSeries& entry(std::size_t i) const { return Q(i, i); }
  /// Builds the type from diagonal entries; throws if any has exponent >= 0.
  static IrregularType from_diagonal(const std::vector<LaurentSeries>& q);
  friend bool operator==(const IrregularType& a, const IrregularType& b) { return a.Q == b.Q; }
};

struct Sl2Data {
  Matrix s, X, H, Y;
  /// Columns: the Jordan-chain basis in which Y, H, X take standard block form.
  Matrix basis;
  /// Sizes of the Jordan blocks of Y, in basis order.
  std::vector<std::size_t> block_sizes;

  bool relations_hold() const;
};

/// d + B dz/z  ->  d + (-z g' g^{-1} + g B g^{-1}) dz/z
MeroConnection gauge_act(const LaurentMatrix& g, const MeroConnection& c, int cap = kDefaultTrunc);
MeroConnection gauge_act(const LaurentMatrix& g, const LaurentMatrix& g_inv, const MeroConnection& c);

bool gauge_orbit_equal(const MeroConnection& c1, const MeroConnection& c2, const LaurentMatrix& g);

struct Reduction {
  CanonicalForm form;
  LaurentMatrix gauge;  // g with gauge_act(g, C) = form up to `trunc`
  int trunc = 0;        // exponents below this are certified
  int gauge_steps = 0;  // number of nontrivial exp(X) factors applied

  /// The canonical form as a connection known up to `trunc`.
  MeroConnection canonical_connection() const { return MeroConnection(form.as_series().truncated(trunc)); }
};

/// Graded normalization. Requires diagonal polar coefficients and the
/// nonnegative part of B in g_theta(K).
Reduction canonical_reduce(const MeroConnection& c, const Weight& theta, int trunc = kDefaultTrunc);

/// For a connection whose leading coefficient B_{-n} is diagonal, removes the
/// off-diagonal parts of the lower polar coefficients that lie outside
/// ker ad(B_{-n}). Returns the gauge used. Throws when the leading
/// coefficient is not diagonal or a non-diagonal polar part survives.
std::pair<MeroConnection, LaurentMatrix> normalize_irregular_shape(const MeroConnection& c,
                                                                   int trunc = kDefaultTrunc);

/// Q = sum_{i>=1} B_{-i} z^{-i} / (-i) of the canonical form.
IrregularType irregular_type_of(const CanonicalForm& f);
/// The polar part is reduced over G(R): the result is the same for every
/// valid theta, which is only checked for validity.
IrregularType extract_irregular_type(const MeroConnection& c, const Weight& theta, int trunc = kDefaultTrunc);

/// A = s + Y with s diagonalizable, Y nilpotent, [s, Y] = 0. Needs every
/// eigenvalue in Q(i).
std::pair<Matrix, Matrix> jordan_decompose(const Matrix& a);
/// Eigenvalues of a (distinct, in the order found), exact.
std::vector<GaussRat> exact_eigenvalues(const Matrix& a);
/// Characteristic polynomial coefficients c_0..c_n (monic, c_n = 1).
std::vector<GaussRat> characteristic_polynomial(const Matrix& a);

/// (X, H, Y) with [H,X] = 2X, [H,Y] = -2Y, [X,Y] = H from standard blocks on
/// Jordan chains. s is left zero.
Sl2Data sl2_complete(const Matrix& y);

}  // namespace wildhodge
