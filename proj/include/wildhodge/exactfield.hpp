#pragma once

// Exact scalar, matrix and truncated Laurent-series arithmetic over the
// Gaussian rationals Q(i). Everything else in the library is built on these
// value types.

#include <gmpxx.h>

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wildhodge {

/// Raised when a mathematical precondition fails (singular matrix, series
/// with no invertible leading term, eigenvalues outside Q(i), ...).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Rational = mpq_class;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
Rational ceil(const Rational& q);
Rational floor(const Rational& q);
bool is_integer(const Rational& q);

class GaussRat {
 public:
  GaussRat() = default;
  GaussRat(long re) : re_(re), im_(0) {}  // NOLINT(google-explicit-constructor)
  GaussRat(Rational re) : re_(std::move(re)), im_(0) { re_.canonicalize(); }  // NOLINT
  GaussRat(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussRat i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  GaussRat conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }
  GaussRat inverse() const;

  GaussRat& operator+=(const GaussRat& o);
  GaussRat& operator-=(const GaussRat& o);
  GaussRat& operator*=(const GaussRat& o);
  GaussRat& operator/=(const GaussRat& o);

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
  friend GaussRat operator-(const GaussRat& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

  /// "3/2", "-1/3i", "1+2i" style rendering for diagnostics.
  std::string to_string() const;
  double re_double() const { return re_.get_d(); }
  double im_double() const { return im_.get_d(); }

 private:
  Rational re_{0};
  Rational im_{0};
};

GaussRat pow(const GaussRat& base, unsigned exponent);

/// Dense n x n matrix over Q(i).
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), a_(n * n) {}
  Matrix(std::size_t n, std::vector<GaussRat> row_major);

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t n) { return Matrix(n); }
  static Matrix diagonal(const std::vector<GaussRat>& d);
  static Matrix unit(std::size_t n, std::size_t i, std::size_t j);

  std::size_t size() const { return n_; }
  GaussRat& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const GaussRat& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  bool is_zero() const;
  bool is_diagonal() const;
  bool is_identity() const;
  std::vector<GaussRat> diag() const;
  GaussRat trace() const;
  Matrix conj() const;
  Matrix transpose() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const GaussRat& c);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) { return a *= GaussRat(-1); }
  friend Matrix operator*(Matrix a, const GaussRat& c) { return a *= c; }
  friend Matrix operator*(const GaussRat& c, Matrix a) { return a *= c; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) { return a.n_ == b.n_ && a.a_ == b.a_; }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  std::string to_string() const;

 private:
  std::size_t n_ = 0;
  std::vector<GaussRat> a_;
};

Matrix commutator(const Matrix& a, const Matrix& b);
Matrix power(const Matrix& a, unsigned k);
GaussRat determinant(const Matrix& a);
Matrix inverse(const Matrix& a);
std::size_t rank(const Matrix& a);
/// Columns of the returned vector form a basis of ker(a), from the reduced
/// row echelon form (one vector per free column, in column order).
std::vector<std::vector<GaussRat>> nullspace(const Matrix& a);
/// Rank of the set of column vectors.
std::size_t rank_of_vectors(const std::vector<std::vector<GaussRat>>& vectors, std::size_t dim);
/// Solves a x = b for square nonsingular a.
std::vector<GaussRat> solve(const Matrix& a, const std::vector<GaussRat>& b);
bool is_nilpotent(const Matrix& a);
/// exp(a) for nilpotent a, an exact finite sum. Throws Error otherwise.
Matrix exp_nilpotent(const Matrix& a);

/// Exponent sentinel: a truncation order of kExact means the series is known
/// exactly (all coefficients are stored); as a valuation it means +infinity.
inline constexpr int kExact = std::numeric_limits<int>::max();
inline constexpr int kInfiniteValuation = kExact;
inline constexpr int kDefaultTrunc = 12;

/// a + b with kExact absorbing.
int add_orders(int a, int b);

/// Truncated Laurent series sum_{e < trunc} c_e z^e over Q(i).
class LaurentSeries {
 public:
  LaurentSeries() = default;  // exact zero
  LaurentSeries(int order_min, std::vector<GaussRat> coeffs, int trunc = kExact);

  static LaurentSeries zero(int trunc = kExact) { return LaurentSeries(0, {}, trunc); }
  static LaurentSeries constant(const GaussRat& c, int trunc = kExact);
  static LaurentSeries monomial(const GaussRat& c, int exponent, int trunc = kExact);

  /// Smallest exponent with a nonzero coefficient, kInfiniteValuation for zero.
  int valuation() const;
  /// min(valuation, trunc): a lower bound for the true valuation.
  int known_valuation() const;
  int trunc() const { return trunc_; }
  bool is_exact() const { return trunc_ == kExact; }
  bool is_zero() const { return c_.empty(); }
  /// Lowest stored exponent (the valuation), or trunc (0 if exact) for zero.
  int order_min() const;
  /// Highest stored exponent; only meaningful when !is_zero().
  int order_max() const { return lo_ + static_cast<int>(c_.size()) - 1; }
  /// Stored coefficients from order_min() upward.
  const std::vector<GaussRat>& coeffs() const { return c_; }
  /// Coefficient of z^e; zero when not stored. Throws when e >= trunc.
  GaussRat coeff(int e) const;

  LaurentSeries truncated(int t) const;
  /// z d/dz
  LaurentSeries z_derivative() const;
  /// z^k * s
  LaurentSeries shifted(int k) const;
  /// Part with exponents < e (the result is exact when the input is known up to e).
  LaurentSeries below(int e) const;
  /// Multiplicative inverse. When the inverse is an infinite series of an
  /// exact input it is truncated at exponent `cap`.
  LaurentSeries inverse(int cap = kDefaultTrunc) const;

  LaurentSeries& operator+=(const LaurentSeries& o);
  LaurentSeries& operator-=(const LaurentSeries& o);
  LaurentSeries& operator*=(const GaussRat& c);
  friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
  friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
  friend LaurentSeries operator-(LaurentSeries a) { return a *= GaussRat(-1); }
  friend LaurentSeries operator*(LaurentSeries a, const GaussRat& c) { return a *= c; }
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
    return a.trunc_ == b.trunc_ && a.lo_ == b.lo_ && a.c_ == b.c_;
  }
  friend bool operator!=(const LaurentSeries& a, const LaurentSeries& b) { return !(a == b); }

  /// Coefficients agree for every exponent below `upto`.
  bool agrees_below(const LaurentSeries& o, int upto) const;

  std::string to_string() const;

 private:
  void normalize();

  int lo_ = 0;
  std::vector<GaussRat> c_;
  int trunc_ = kExact;
};

/// Valuation of a truncated series, the spec-facing name.
inline int series_val(const LaurentSeries& s) { return s.valuation(); }

/// n x n matrix of Laurent series sharing one truncation order.
class LaurentMatrix {
 public:
  LaurentMatrix() = default;
  explicit LaurentMatrix(std::size_t n, int trunc = kExact);
  LaurentMatrix(std::size_t n, std::vector<LaurentSeries> row_major);

  static LaurentMatrix identity(std::size_t n) { return from_constant(Matrix::identity(n)); }
  static LaurentMatrix from_constant(const Matrix& m, int exponent = 0, int trunc = kExact);
  /// sum_k coeffs[k] z^(lowest + k)
  static LaurentMatrix from_coefficients(const std::vector<Matrix>& coeffs, int lowest,
                                         int trunc = kExact);

  std::size_t size() const { return n_; }
  const LaurentSeries& operator()(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, LaurentSeries s);

  int trunc() const { return trunc_; }
  bool is_exact() const { return trunc_ == kExact; }
  int valuation() const;
  int known_valuation() const;
  bool is_zero() const;
  /// Highest stored exponent over all entries (valuation() - 1 for zero).
  int order_max() const;
  Matrix coefficient(int e) const;

  LaurentMatrix truncated(int t) const;
  LaurentMatrix z_derivative() const;
  LaurentMatrix shifted(int k) const;

  LaurentMatrix& operator+=(const LaurentMatrix& o);
  LaurentMatrix& operator-=(const LaurentMatrix& o);
  LaurentMatrix& operator*=(const GaussRat& c);
  friend LaurentMatrix operator+(LaurentMatrix a, const LaurentMatrix& b) { return a += b; }
  friend LaurentMatrix operator-(LaurentMatrix a, const LaurentMatrix& b) { return a -= b; }
  friend LaurentMatrix operator-(LaurentMatrix a) { return a *= GaussRat(-1); }
  friend LaurentMatrix operator*(LaurentMatrix a, const GaussRat& c) { return a *= c; }
  friend bool operator==(const LaurentMatrix& a, const LaurentMatrix& b) {
    return a.n_ == b.n_ && a.trunc_ == b.trunc_ && a.e_ == b.e_;
  }

  bool agrees_below(const LaurentMatrix& o, int upto) const;
  std::string to_string() const;

 private:
  void retrunc(int t);

  std::size_t n_ = 0;
  std::vector<LaurentSeries> e_;
  int trunc_ = kExact;
};

/// Exact product; truncated at min(a.trunc + val(b), b.trunc + val(a)) using
/// known valuations. Throws std::invalid_argument on a dimension mismatch.
LaurentMatrix mat_mul(const LaurentMatrix& a, const LaurentMatrix& b);
inline LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) { return mat_mul(a, b); }

LaurentSeries determinant(const LaurentMatrix& a);
/// Inverse in G(K) via adjugate over determinant. Throws Error("not a unit in
/// G(K)") when the determinant has no known nonzero coefficient.
LaurentMatrix mat_inv(const LaurentMatrix& a, int cap = kDefaultTrunc);
/// exp(N) when N is nilpotent or has strictly positive valuation. An infinite
/// expansion of an exact input is cut at exponent `cap`.
LaurentMatrix mat_exp_nilpotent(const LaurentMatrix& n, int cap = kDefaultTrunc);

}  // namespace wildhodge
