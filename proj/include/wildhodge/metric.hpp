#pragma once

// The local model metric, checked symbolically. Every dependence on |z| and
// ln|z|^2 is reduced to t = 1 / ln|z|^2 with zbar d/dzbar t = -t^2, and
// u = -ln|z|^2 = -1/t.

#include <map>
#include <string>
#include <vector>

#include "wildhodge/connection.hpp"
#include "wildhodge/rootdata.hpp"

namespace wildhodge {

/// Finite Laurent polynomial in t with n x n matrix coefficients.
class TPoly {
 public:
  TPoly() = default;
  explicit TPoly(std::size_t n) : n_(n) {}
  static TPoly monomial(const Matrix& m, int power);

  std::size_t size() const { return n_; }
  const std::map<int, Matrix>& terms() const { return terms_; }
  Matrix coefficient(int power) const;
  bool is_zero() const { return terms_.empty(); }
  /// Lowest power with a nonzero coefficient; throws on zero.
  int min_degree() const;
  void add(int power, const Matrix& m);

  TPoly& operator+=(const TPoly& o);
  TPoly& operator-=(const TPoly& o);
  friend TPoly operator+(TPoly a, const TPoly& b) { return a += b; }
  friend TPoly operator-(TPoly a, const TPoly& b) { return a -= b; }
  friend TPoly operator*(const TPoly& a, const TPoly& b);
  friend TPoly operator*(TPoly a, const GaussRat& c);
  friend bool operator==(const TPoly& a, const TPoly& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

  /// Conjugation g^-1 p g by a constant matrix.
  TPoly conjugated(const Matrix& g, const Matrix& g_inv) const;
  std::string to_string() const;

 private:
  std::size_t n_ = 0;
  std::map<int, Matrix> terms_;  // no zero coefficients stored
};

TPoly commutator(const TPoly& a, const TPoly& b);

/// zbar d/dzbar on each monomial: M t^k -> -k M t^{k+1}.
TPoly t_derivative(const TPoly& p);

struct MetricData {
  Weight beta;
  Sl2Data triple;  // s, X, H, Y with its Jordan basis
  IrregularType Q;
  /// Conjugate of s (an independent input in the symbolic layer).
  Matrix s_bar;

  /// s_bar = conj(s) and Q left empty.
  static MetricData from(const Weight& beta, const Sl2Data& triple);
  /// sl2 relations, [s, Y] = 0, and beta commuting with the whole triple.
  bool valid() const;
};

struct IdentityCheck {
  std::string name;
  bool holds = false;
};

/// The seven identities and three derived ones, exactly.
std::vector<IdentityCheck> sl2_identity_suite(const Sl2Data& t);

/// -(zbar d/dzbar M + [K, M]) with K = -s_bar/2 - H t / 2, M = (s - beta)/2 - Y t.
TPoly pseudo_curvature(const MetricData& d);

/// beta - Y + 2 H t + 2 X t^2.
TPoly chern_coefficient(const MetricData& d);

/// Curvature in the holomorphic frame e: -zbar d/dzbar of the Chern coefficient.
TPoly curvature_e(const MetricData& d);

/// g_0^{-1} F g_0 with g_0 = |z|^{-beta} u^{-H/2} e^X, evaluated symbolically.
TPoly curvature_e0(const MetricData& d);

/// u^{sign H/2} p u^{-sign H/2}, computed entrywise in the Jordan basis of the triple.
TPoly conjugate_by_u_power(const TPoly& p, const Sl2Data& t, int sign);

struct HiggsExtraction {
  TPoly dbar;      // coefficient of dzbar/zbar in d'' - d''_0, without the Q term
  TPoly phi;       // coefficient of dz/z in phi, without the Q term
  TPoly phi_star;  // coefficient of dzbar/zbar in phi*, without the Q term
  /// zQ'(z) / 2 (the irregular part of phi, and, conjugated, of phi* and -d'').
  LaurentMatrix half_euler_Q;
  /// Residue of the Higgs field in the adapted frame, as tabulated: (s - beta)/2 + (Y - H + X).
  Matrix residue;
  /// The same residue obtained by actually conjugating phi by g_2 = |z|^{s_bar} u^{H/2} e^X.
  Matrix frame_change_residue;
};
HiggsExtraction higgs_extraction(const MetricData& d);

struct WeightJumpReport {
  std::vector<double> de_rham_exponents, de_rham_expected;
  std::vector<double> dolbeault_exponents, dolbeault_expected;
  double tolerance = 0.02;
  bool passed = false;
};
/// Samples |e|^2 and |e_2|^2 at r = 10^-3 .. 10^-8 and fits
/// log h_ii = a log r + b log(-log r^2) + c per diagonal entry, in the
/// Jordan basis of the triple.
WeightJumpReport weight_jump_check(const MetricData& d);

}  // namespace wildhodge
