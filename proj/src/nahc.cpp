#include "wildhodge/nahc.hpp"

#include <Eigen/Dense>
#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

namespace wildhodge {

namespace {

using BigReal = boost::multiprecision::mpfr_float;

constexpr double kPi = 3.14159265358979323846;

// default_precision is process-wide in this boost version
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits) : old_(BigReal::default_precision()) { BigReal::default_precision(digits); }
  ~PrecisionScope() { BigReal::default_precision(old_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned old_;
};

BigReal big(const Rational& q) { return BigReal(q.get_num().get_str()) / BigReal(q.get_den().get_str()); }

std::string decimal(const BigReal& x, unsigned digits) { return x.str(static_cast<std::streamsize>(digits), std::ios_base::scientific); }

Matrix beta_matrix(const Weight& b) {
  std::vector<GaussRat> d;
  for (const auto& x : b.v) d.emplace_back(x);
  return Matrix::diagonal(d);
}

void require_shape(const DeRhamLocal& d) {
  std::size_t n = d.residue.size();
  if (d.beta.size() != n) throw std::invalid_argument("weight and residue sizes differ");
  if (d.Q.size() != 0 && d.Q.size() != n) throw std::invalid_argument("irregular type and residue sizes differ");
}

}  // namespace

Sl2Data residue_structure(const Matrix& residue) {
  auto [s, y] = jordan_decompose(residue);
  if (!s.is_diagonal()) throw Error("residue not in Levi-factor normal form: semisimple part is not diagonal");
  Sl2Data t = sl2_complete(y);
  t.s = s;
  return t;
}

IrregularType scale_irregular_type(const IrregularType& q, const GaussRat& c) {
  IrregularType out = q;
  out.Q = q.Q * c;
  if (c.is_zero()) {
    out.degree = 0;
    out.trivial = true;
  }
  return out;
}

DolbeaultLocal dR_to_Dol(const DeRhamLocal& d) {
  require_shape(d);
  Sl2Data t = residue_structure(d.residue);
  DolbeaultLocal out;
  std::vector<Rational> alpha;
  for (std::size_t i = 0; i < t.s.size(); ++i) alpha.push_back(t.s(i, i).re());
  out.alpha = Weight(alpha);
  out.residue = (t.s - beta_matrix(d.beta)) * GaussRat(Rational(1, 2)) + (t.Y - t.H + t.X);
  out.Q = scale_irregular_type(d.Q, GaussRat(Rational(1, 2)));
  return out;
}

BettiLocal dR_to_Betti(const DeRhamLocal& d, unsigned precision_bits) {
  require_shape(d);
  auto [s, y] = jordan_decompose(d.residue);
  if (!s.is_diagonal()) throw Error("residue not in Levi-factor normal form: semisimple part is not diagonal");
  std::size_t n = s.size();
  BettiLocal out;
  out.Q = d.Q;

  std::vector<Rational> gamma;
  for (std::size_t i = 0; i < n; ++i) gamma.push_back(d.beta[i] - s(i, i).re());
  out.gamma = Weight(gamma);

  auto digits = static_cast<unsigned>(std::ceil(precision_bits * 0.30103)) + 2;
  PrecisionScope scope(digits + 10);
  BigReal pi = boost::math::constants::pi<BigReal>();
  for (std::size_t i = 0; i < n; ++i) {
    const GaussRat& sj = s(i, i);
    MonodromyEigenvalue e;
    // exp(-2 pi i (a + b i)) = exp(2 pi b) (cos 2 pi a - i sin 2 pi a)
    BigReal mod = exp(2 * pi * big(sj.im()));
    BigReal ang = 2 * pi * big(sj.re());
    BigReal re = mod * cos(ang), im = -mod * sin(ang);
    if (sj.is_real()) {
      e.turns = sj.re();
      Rational four = 4 * sj.re();
      four.canonicalize();
      if (is_integer(four)) {
        long m = four.get_num().get_si() % 4;
        if (m < 0) m += 4;
        static const GaussRat table[4] = {GaussRat(1), GaussRat(Rational(0), Rational(-1)), GaussRat(-1), GaussRat(Rational(0), Rational(1))};
        e.exact = table[m];
        re = big(e.exact->re());
        im = big(e.exact->im());
      }
    }
    e.value = {static_cast<double>(re), static_cast<double>(im)};
    e.re = decimal(re, digits);
    e.im = decimal(im, digits);
    out.semisimple.push_back(std::move(e));
  }

  // sum_k (-2 i)^k / k! Y^k pi^k
  Matrix yk = Matrix::identity(n);
  GaussRat coeff(1);
  for (long k = 0; !yk.is_zero(); ++k) {
    out.unipotent.push_back(yk * coeff);
    yk = yk * y;
    coeff = coeff * GaussRat(Rational(0), Rational(-2)) * GaussRat(Rational(1, k + 1));
  }
  return out;
}

std::vector<std::complex<double>> BettiLocal::numeric_monodromy() const {
  std::size_t n = semisimple.size();
  std::vector<std::complex<double>> u(n * n);
  double pk = 1;
  for (const auto& term : unipotent) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) u[i * n + j] += pk * std::complex<double>(term(i, j).re_double(), term(i, j).im_double());
    pk *= kPi;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) u[i * n + j] *= semisimple[i].value;
  return u;
}

bool roundtrip_weight_check(const DeRhamLocal& d, unsigned precision_bits) {
  auto dol = dR_to_Dol(d);
  auto bet = dR_to_Betti(d, precision_bits);
  for (std::size_t i = 0; i < d.beta.size(); ++i)
    if (bet.gamma[i] + dol.alpha[i] != d.beta[i]) return false;
  return true;
}

double monodromy_factorization_error(const DeRhamLocal& d) {
  std::size_t n = d.residue.size();
  Eigen::MatrixXcd a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = {d.residue(i, j).re_double(), d.residue(i, j).im_double()};
  Eigen::MatrixXcd scaled = a * std::complex<double>(0, -2 * kPi);
  Eigen::MatrixXcd ref = scaled.exp();
  auto fac = dR_to_Betti(d, 64).numeric_monodromy();
  double err = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) err = std::max(err, std::abs(ref(i, j) - fac[i * n + j]));
  return err;
}

namespace {

struct ScalarQ {
  std::vector<std::pair<int, std::complex<double>>> terms;  // (exponent, coefficient)

  std::complex<double> value(std::complex<double> z) const {
    std::complex<double> acc;
    for (const auto& [e, c] : terms) acc += c * std::pow(z, e);
    return acc;
  }
  // z q'(z)
  std::complex<double> euler(std::complex<double> z) const {
    std::complex<double> acc;
    for (const auto& [e, c] : terms) acc += static_cast<double>(e) * c * std::pow(z, e);
    return acc;
  }
};

std::complex<double> continue_once(const ScalarQ& q, std::complex<double> b, long steps) {
  const std::complex<double> I(0, 1);
  double span = kLoopOrientation * 2 * kPi;
  double h = span / static_cast<double>(steps);
  // df/dtheta = i (z q'(z) + b) f on z = e^{i theta}
  auto rhs = [&](double th, std::complex<double> f) { return I * (q.euler(std::polar(1.0, th)) + b) * f; };
  std::complex<double> f = 1;
  for (long s = 0; s < steps; ++s) {
    double th = h * static_cast<double>(s);
    auto k1 = rhs(th, f);
    auto k2 = rhs(th + h / 2, f + h / 2 * k1);
    auto k3 = rhs(th + h / 2, f + h / 2 * k2);
    auto k4 = rhs(th + h, f + h * k3);
    f += h / 6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  std::complex<double> z0 = 1, z1 = std::polar(1.0, span);
  return f * std::exp(q.value(z0) - q.value(z1));
}

}  // namespace

std::complex<double> rank1_monodromy_oracle(const GaussRat& b, const IrregularType& q, double tol) {
  if (q.size() > 1) throw std::invalid_argument("rank-one oracle needs scalar data");
  ScalarQ sq;
  if (q.size() == 1 && !q.entry(0).is_zero()) {
    const auto& e = q.entry(0);
    for (int k = e.order_min(); k <= e.order_max(); ++k) {
      GaussRat c = e.coeff(k);
      if (!c.is_zero()) sq.terms.emplace_back(k, std::complex<double>(c.re_double(), c.im_double()));
    }
  }
  std::complex<double> bb(b.re_double(), b.im_double());
  long steps = 64;
  std::complex<double> prev = continue_once(sq, bb, steps);
  while (steps < (1L << 22)) {
    steps *= 2;
    std::complex<double> next = continue_once(sq, bb, steps);
    if (std::abs(next - prev) < tol) return next;
    prev = next;
  }
  throw Error("step-size failure to converge");
}

}  // namespace wildhodge
