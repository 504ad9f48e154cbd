#include "wildhodge/metric.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wildhodge {

TPoly TPoly::monomial(const Matrix& m, int power) {
  TPoly p(m.size());
  p.add(power, m);
  return p;
}

Matrix TPoly::coefficient(int power) const {
  auto it = terms_.find(power);
  return it == terms_.end() ? Matrix(n_) : it->second;
}

int TPoly::min_degree() const {
  if (terms_.empty()) throw std::logic_error("zero polynomial has no degree");
  return terms_.begin()->first;
}

void TPoly::add(int power, const Matrix& m) {
  if (n_ == 0) n_ = m.size();
  if (m.size() != n_) throw std::invalid_argument("TPoly size mismatch");
  if (m.is_zero()) return;
  auto it = terms_.find(power);
  if (it == terms_.end()) {
    terms_.emplace(power, m);
    return;
  }
  it->second += m;
  if (it->second.is_zero()) terms_.erase(it);
}

TPoly& TPoly::operator+=(const TPoly& o) {
  if (n_ == 0) n_ = o.n_;
  for (const auto& [k, m] : o.terms_) add(k, m);
  return *this;
}

TPoly& TPoly::operator-=(const TPoly& o) {
  if (n_ == 0) n_ = o.n_;
  for (const auto& [k, m] : o.terms_) add(k, m * GaussRat(-1));
  return *this;
}

TPoly operator*(const TPoly& a, const TPoly& b) {
  TPoly out(std::max(a.n_, b.n_));
  for (const auto& [i, x] : a.terms_)
    for (const auto& [j, y] : b.terms_) out.add(i + j, x * y);
  return out;
}

TPoly operator*(TPoly a, const GaussRat& c) {
  TPoly out(a.n_);
  for (const auto& [k, m] : a.terms_) out.add(k, m * c);
  return out;
}

TPoly TPoly::conjugated(const Matrix& g, const Matrix& g_inv) const {
  TPoly out(n_);
  for (const auto& [k, m] : terms_) out.add(k, g_inv * m * g);
  return out;
}

std::string TPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, m] : terms_) {
    out << (first ? "" : " + ") << m.to_string() << " t^" << k;
    first = false;
  }
  return out.str();
}

TPoly commutator(const TPoly& a, const TPoly& b) { return a * b - b * a; }

TPoly t_derivative(const TPoly& p) {
  TPoly out(p.size());
  for (const auto& [k, m] : p.terms()) out.add(k + 1, m * GaussRat(-k));
  return out;
}

MetricData MetricData::from(const Weight& beta, const Sl2Data& triple) {
  MetricData d;
  d.beta = beta;
  d.triple = triple;
  d.s_bar = triple.s.conj();
  d.Q = IrregularType::from_diagonal(std::vector<LaurentSeries>(beta.size()));
  return d;
}

namespace {

Matrix beta_matrix(const Weight& b) {
  std::vector<GaussRat> d;
  for (const auto& x : b.v) d.emplace_back(x);
  return Matrix::diagonal(d);
}

const GaussRat kHalf(Rational(1, 2));

}  // namespace

bool MetricData::valid() const {
  const auto& t = triple;
  if (!t.relations_hold() || !commutator(t.s, t.Y).is_zero()) return false;
  Matrix b = beta_matrix(beta);
  for (const Matrix* m : {&t.s, &t.X, &t.H, &t.Y})
    if (!commutator(b, *m).is_zero()) return false;
  return s_bar.size() == t.s.size();
}

TPoly conjugate_by_u_power(const TPoly& p, const Sl2Data& t, int sign) {
  std::size_t n = p.size();
  Matrix P = t.basis.size() == n ? t.basis : Matrix::identity(n);
  Matrix Pi = inverse(P);
  Matrix hj = Pi * t.H * P;
  if (!hj.is_diagonal()) throw Error("H is not diagonal in the Jordan basis");
  TPoly out(n);
  for (const auto& [k, m] : p.terms()) {
    Matrix mj = Pi * m * P;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (mj(i, j).is_zero()) continue;
        Rational diff = sign * (hj(i, i).re() - hj(j, j).re());
        Rational half = diff / 2;
        half.canonicalize();
        if (!is_integer(half)) throw Error("half-integer power of ln|z|^2");
        long e = half.get_num().get_si();
        // u^e = (-1)^e t^{-e}
        Matrix entry = Matrix::unit(n, i, j) * mj(i, j) * GaussRat(e % 2 ? -1 : 1);
        out.add(k - static_cast<int>(e), P * entry * Pi);
      }
  }
  return out;
}

std::vector<IdentityCheck> sl2_identity_suite(const Sl2Data& t) {
  const Matrix &X = t.X, &H = t.H, &Y = t.Y;
  Matrix eX = exp_nilpotent(X), emX = exp_nilpotent(X * GaussRat(-1));
  Matrix eY = exp_nilpotent(Y), emY = exp_nilpotent(Y * GaussRat(-1));
  std::vector<IdentityCheck> out;

  auto u_check = [&](const std::string& name, const Matrix& m, int sign, int expect_power) {
    bool ok = false;
    try {
      // u^{+-1} = -t^{-+1}
      ok = conjugate_by_u_power(TPoly::monomial(m, 0), t, sign) == TPoly::monomial(m * GaussRat(-1), expect_power);
    } catch (const Error&) {
      ok = false;
    }
    out.push_back({name, ok});
  };
  u_check("u^{H/2} X u^{-H/2} = u X", X, 1, -1);
  u_check("u^{-H/2} X u^{H/2} = u^{-1} X", X, -1, 1);
  u_check("u^{H/2} Y u^{-H/2} = u^{-1} Y", Y, 1, 1);
  u_check("u^{-H/2} Y u^{H/2} = u Y", Y, -1, -1);
  out.push_back({"e^X H e^{-X} = H - 2X", eX * H * emX == H - X * GaussRat(2)});
  out.push_back({"e^Y H e^{-Y} = H + 2Y", eY * H * emY == H + Y * GaussRat(2)});
  out.push_back({"e^X Y e^{-X} = Y + H - X", eX * Y * emX == Y + H - X});
  out.push_back({"e^{-X} H e^X = H + 2X", emX * H * eX == H + X * GaussRat(2)});
  out.push_back({"e^{-Y} H e^Y = H - 2Y", emY * H * eY == H - Y * GaussRat(2)});
  out.push_back({"e^{-X} Y e^X = Y - H - X", emX * Y * eX == Y - H - X});
  return out;
}

TPoly pseudo_curvature(const MetricData& d) {
  const auto& t = d.triple;
  Matrix s_minus_beta = t.s - beta_matrix(d.beta);
  TPoly K = TPoly::monomial(d.s_bar * GaussRat(Rational(-1, 2)), 0) + TPoly::monomial(t.H * GaussRat(Rational(-1, 2)), 1);
  TPoly M = TPoly::monomial(s_minus_beta * kHalf, 0) + TPoly::monomial(t.Y * GaussRat(-1), 1);
  return (t_derivative(M) + commutator(K, M)) * GaussRat(-1);
}

TPoly chern_coefficient(const MetricData& d) {
  const auto& t = d.triple;
  TPoly p(t.s.size());
  p.add(0, beta_matrix(d.beta) - t.Y);
  p.add(1, t.H * GaussRat(2));
  p.add(2, t.X * GaussRat(2));
  return p;
}

TPoly curvature_e(const MetricData& d) { return t_derivative(chern_coefficient(d)) * GaussRat(-1); }

TPoly curvature_e0(const MetricData& d) {
  const auto& t = d.triple;
  TPoly f = curvature_e(d);
  // |z|^{beta} commutes with everything in sight when beta commutes with the triple
  Matrix b = beta_matrix(d.beta);
  for (const auto& [k, m] : f.terms())
    if (!commutator(b, m).is_zero()) throw Error("beta does not commute with the curvature");
  TPoly g = conjugate_by_u_power(f, t, 1);
  return g.conjugated(exp_nilpotent(t.X), exp_nilpotent(t.X * GaussRat(-1)));
}

HiggsExtraction higgs_extraction(const MetricData& d) {
  const auto& t = d.triple;
  std::size_t n = t.s.size();
  Matrix sb = t.s - beta_matrix(d.beta);
  HiggsExtraction h;
  h.dbar = TPoly(n);
  h.dbar.add(0, d.s_bar * GaussRat(Rational(-1, 2)));
  h.dbar.add(1, t.H * GaussRat(Rational(-1, 2)));
  h.phi = TPoly(n);
  h.phi.add(0, sb * kHalf);
  h.phi.add(1, t.Y * GaussRat(-1));
  h.phi_star = TPoly(n);
  h.phi_star.add(0, (d.s_bar - beta_matrix(d.beta)) * kHalf);
  h.phi_star.add(1, t.X * GaussRat(-1));
  h.half_euler_Q = d.Q.size() == n ? d.Q.Q.z_derivative() * kHalf : LaurentMatrix(n);
  h.residue = sb * kHalf + (t.Y - t.H + t.X);

  TPoly moved = conjugate_by_u_power(h.phi, t, -1).conjugated(exp_nilpotent(t.X), exp_nilpotent(t.X * GaussRat(-1)));
  for (const auto& [k, m] : moved.terms())
    if (k != 0) throw Error("Higgs field in the adapted frame still depends on ln|z|");
  h.frame_change_residue = moved.coefficient(0);
  return h;
}

namespace {

Eigen::MatrixXd real_part(const Matrix& m) {
  Eigen::MatrixXd out(m.size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out(i, j) = m(i, j).re_double();
  return out;
}

double fit_exponent(const std::vector<double>& logr, const std::vector<double>& logu, const std::vector<double>& logh) {
  Eigen::MatrixXd a(logr.size(), 3);
  Eigen::VectorXd y(logr.size());
  for (std::size_t i = 0; i < logr.size(); ++i) {
    a(i, 0) = logr[i];
    a(i, 1) = logu[i];
    a(i, 2) = 1;
    y(i) = logh[i];
  }
  return a.colPivHouseholderQr().solve(y)(0);
}

}  // namespace

WeightJumpReport weight_jump_check(const MetricData& d) {
  const auto& t = d.triple;
  std::size_t n = t.s.size();
  Matrix P = t.basis.size() == n ? t.basis : Matrix::identity(n);
  Matrix Pi = inverse(P);
  Matrix bj = Pi * beta_matrix(d.beta) * P, sj = Pi * t.s * P, hj = Pi * t.H * P;
  if (!bj.is_diagonal() || !sj.is_diagonal() || !hj.is_diagonal())
    throw Error("weights are not diagonal in the Jordan basis");
  for (std::size_t i = 0; i < n; ++i)
    if (!sj(i, i).is_real()) throw Error("numeric weight check needs real s");

  Eigen::MatrixXd eX = real_part(exp_nilpotent(Pi * t.X * P)), emX = real_part(exp_nilpotent(Pi * t.X * P * GaussRat(-1)));
  Eigen::MatrixXd eY = real_part(exp_nilpotent(Pi * t.Y * P)), emY = real_part(exp_nilpotent(Pi * t.Y * P * GaussRat(-1)));
  std::vector<double> beta(n), s(n), h(n);
  for (std::size_t i = 0; i < n; ++i) {
    beta[i] = bj(i, i).re_double();
    s[i] = sj(i, i).re_double();
    h[i] = hj(i, i).re_double();
  }

  std::vector<double> logr, logu;
  std::vector<std::vector<double>> dr(n), dol(n);
  for (int k = 0; k <= 10; ++k) {
    double r = std::pow(10.0, -3.0 - 0.5 * k);
    double u = -std::log(r * r);
    logr.push_back(std::log(r));
    logu.push_back(std::log(u));
    Eigen::VectorXd half(n), full(n), rb(n), rs(n);
    for (std::size_t i = 0; i < n; ++i) {
      half(i) = std::pow(u, h[i] / 2);
      full(i) = std::pow(u, h[i]);
      rb(i) = std::pow(r, 2 * beta[i]);
      rs(i) = std::pow(r, 2 * s[i]);
    }
    // |e|^2 = |z|^{2 beta} u^{H/2} e^{-Y} e^{-X} u^{H/2}
    Eigen::VectorXd rb_half = rb.cwiseProduct(half);
    Eigen::MatrixXd e = rb_half.asDiagonal() * emY * emX * half.asDiagonal();
    // |e_2|^2 = |z|^{s + s_bar} e^Y u^H e^X
    Eigen::MatrixXd e2 = rs.asDiagonal() * eY * full.asDiagonal() * eX;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(std::abs(e(i, i)) > 0) || !(std::abs(e2(i, i)) > 0)) throw Error("fit failure: vanishing diagonal entry");
      dr[i].push_back(std::log(std::abs(e(i, i))));
      dol[i].push_back(std::log(std::abs(e2(i, i))));
    }
  }

  WeightJumpReport rep;
  rep.passed = true;
  for (std::size_t i = 0; i < n; ++i) {
    rep.de_rham_exponents.push_back(fit_exponent(logr, logu, dr[i]));
    rep.de_rham_expected.push_back(2 * beta[i]);
    rep.dolbeault_exponents.push_back(fit_exponent(logr, logu, dol[i]));
    rep.dolbeault_expected.push_back(2 * s[i]);
    auto close = [&](double a, double b) { return std::abs(a - b) <= rep.tolerance * std::max(1.0, std::abs(b)); };
    if (!close(rep.de_rham_exponents[i], rep.de_rham_expected[i]) ||
        !close(rep.dolbeault_exponents[i], rep.dolbeault_expected[i]))
      rep.passed = false;
  }
  return rep;
}

}  // namespace wildhodge
