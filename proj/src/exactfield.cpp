#include "wildhodge/exactfield.hpp"

#include <algorithm>
#include <sstream>

namespace wildhodge {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  auto valid_int = [](const std::string& part) {
    std::size_t k = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (k >= part.size()) return false;
    return std::all_of(part.begin() + static_cast<long>(k), part.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed rational '" + s + "'");
  mpz_class p(num, 10), q(den, 10);
  if (q == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational ceil(const Rational& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(r);
}

Rational floor(const Rational& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(r);
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

GaussRat GaussRat::inverse() const {
  Rational n = norm();
  if (sgn(n) == 0) throw Error("division by zero in Q(i)");
  return {re_ / n, -im_ / n};
}

GaussRat& GaussRat::operator+=(const GaussRat& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRat& GaussRat::operator-=(const GaussRat& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRat& GaussRat::operator*=(const GaussRat& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational r = re_ * o.re_ - im_ * o.im_;
  Rational i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussRat& GaussRat::operator/=(const GaussRat& o) {
  if (sgn(o.im_) == 0) {
    if (sgn(o.re_) == 0) throw Error("division by zero in Q(i)");
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

std::string GaussRat::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string im = im_ == 1 ? "" : im_ == -1 ? "-" : im_.get_str();
  if (sgn(re_) == 0) return im + "i";
  return re_.get_str() + (sgn(im_) > 0 ? "+" : "") + im + "i";
}

GaussRat pow(const GaussRat& base, unsigned exponent) {
  GaussRat result(1), b = base;
  while (exponent) {
    if (exponent & 1u) result *= b;
    b *= b;
    exponent >>= 1u;
  }
  return result;
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t n, std::vector<GaussRat> row_major) : n_(n), a_(std::move(row_major)) {
  if (a_.size() != n * n) throw std::invalid_argument("matrix data does not have n*n entries");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::diagonal(const std::vector<GaussRat>& d) {
  Matrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::unit(std::size_t n, std::size_t i, std::size_t j) {
  Matrix m(n);
  m(i, j) = 1;
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const GaussRat& x) { return x.is_zero(); });
}

bool Matrix::is_diagonal() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (i != j && !(*this)(i, j).is_zero()) return false;
  return true;
}

bool Matrix::is_identity() const { return *this == identity(n_); }

std::vector<GaussRat> Matrix::diag() const {
  std::vector<GaussRat> d(n_);
  for (std::size_t i = 0; i < n_; ++i) d[i] = (*this)(i, i);
  return d;
}

GaussRat Matrix::trace() const {
  GaussRat t;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

Matrix Matrix::conj() const {
  Matrix m(*this);
  for (auto& x : m.a_) x = x.conj();
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (o.n_ != n_) throw std::invalid_argument("dimension mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (o.n_ != n_) throw std::invalid_argument("dimension mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

Matrix& Matrix::operator*=(const GaussRat& c) {
  for (auto& x : a_) x *= c;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("dimension mismatch");
  const std::size_t n = a.n_;
  Matrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const GaussRat& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
    }
  return c;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < n_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < n_; ++j) os << (j ? ", " : "") << (*this)(i, j).to_string();
  }
  os << ']';
  return os.str();
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix power(const Matrix& a, unsigned k) {
  Matrix r = Matrix::identity(a.size());
  for (unsigned i = 0; i < k; ++i) r = r * a;
  return r;
}

namespace {

// Row reduction of an r x c array in place; returns pivot columns.
using Rows = std::vector<std::vector<GaussRat>>;

std::vector<std::size_t> rref(Rows& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && m[p][col].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    GaussRat inv = m[row][col].inverse();
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      GaussRat f = m[r][col];
      for (std::size_t j = col; j < m[r].size(); ++j) m[r][j] -= f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

Rows to_rows(const Matrix& a) {
  Rows m(a.size(), std::vector<GaussRat>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m[i][j] = a(i, j);
  return m;
}

}  // namespace

GaussRat determinant(const Matrix& a) {
  Rows m = to_rows(a);
  const std::size_t n = a.size();
  GaussRat det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && m[p][col].is_zero()) ++p;
    if (p == n) return GaussRat(0);
    if (p != col) {
      std::swap(m[p], m[col]);
      det = -det;
    }
    det *= m[col][col];
    GaussRat inv = m[col][col].inverse();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      GaussRat f = m[r][col] * inv;
      for (std::size_t j = col; j < n; ++j) m[r][j] -= f * m[col][j];
    }
  }
  return det;
}

Matrix inverse(const Matrix& a) {
  const std::size_t n = a.size();
  Rows m(n, std::vector<GaussRat>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a(i, j);
    m[i][n + i] = 1;
  }
  auto piv = rref(m, n);
  if (piv.size() != n) throw Error("singular matrix");
  Matrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = m[i][n + j];
  return r;
}

std::size_t rank(const Matrix& a) {
  Rows m = to_rows(a);
  return rref(m, a.size()).size();
}

std::vector<std::vector<GaussRat>> nullspace(const Matrix& a) {
  const std::size_t n = a.size();
  Rows m = to_rows(a);
  auto piv = rref(m, n);
  std::vector<bool> is_pivot(n, false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<std::vector<GaussRat>> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<GaussRat> v(n);
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank_of_vectors(const std::vector<std::vector<GaussRat>>& vectors, std::size_t dim) {
  Rows m(vectors.begin(), vectors.end());
  for (auto& r : m)
    if (r.size() != dim) throw std::invalid_argument("vector dimension mismatch");
  return rref(m, dim).size();
}

std::vector<GaussRat> solve(const Matrix& a, const std::vector<GaussRat>& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("dimension mismatch");
  Rows m(n, std::vector<GaussRat>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a(i, j);
    m[i][n] = b[i];
  }
  if (rref(m, n).size() != n) throw Error("singular linear system");
  std::vector<GaussRat> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
  return x;
}

bool is_nilpotent(const Matrix& a) {
  return power(a, static_cast<unsigned>(a.size())).is_zero();
}

Matrix exp_nilpotent(const Matrix& a) {
  if (!is_nilpotent(a)) throw Error("exponential not exactly computable");
  Matrix sum = Matrix::identity(a.size()), term = sum;
  for (std::size_t k = 1; k <= a.size(); ++k) {
    term = term * a * GaussRat(Rational(1, static_cast<unsigned long>(k)));
    if (term.is_zero()) break;
    sum += term;
  }
  return sum;
}

// ---------------------------------------------------------- LaurentSeries

int add_orders(int a, int b) {
  if (a == kExact || b == kExact) return kExact;
  long long s = static_cast<long long>(a) + b;
  if (s >= kExact) return kExact - 1;
  if (s <= -kExact) return -kExact + 1;
  return static_cast<int>(s);
}

LaurentSeries::LaurentSeries(int order_min, std::vector<GaussRat> coeffs, int trunc)
    : lo_(order_min), c_(std::move(coeffs)), trunc_(trunc) {
  if (trunc != kExact && order_min > trunc) throw std::invalid_argument("order_min exceeds trunc");
  normalize();
}

LaurentSeries LaurentSeries::constant(const GaussRat& c, int trunc) { return monomial(c, 0, trunc); }

LaurentSeries LaurentSeries::monomial(const GaussRat& c, int exponent, int trunc) {
  if (exponent >= trunc) return LaurentSeries(std::min(exponent, trunc), {}, trunc);
  return LaurentSeries(exponent, {c}, trunc);
}

void LaurentSeries::normalize() {
  if (trunc_ != kExact) {
    long long keep = static_cast<long long>(trunc_) - lo_;
    if (keep < 0) keep = 0;
    if (static_cast<long long>(c_.size()) > keep) c_.resize(static_cast<std::size_t>(keep));
  }
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead].is_zero()) ++lead;
  if (lead) {
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
    lo_ += static_cast<int>(lead);
  }
  if (c_.empty()) lo_ = 0;
}

int LaurentSeries::valuation() const { return c_.empty() ? kInfiniteValuation : lo_; }

int LaurentSeries::known_valuation() const { return c_.empty() ? trunc_ : lo_; }

int LaurentSeries::order_min() const {
  if (!c_.empty()) return lo_;
  return trunc_ == kExact ? 0 : trunc_;
}

GaussRat LaurentSeries::coeff(int e) const {
  if (e >= trunc_) throw Error("coefficient of z^" + std::to_string(e) + " is beyond the truncation order");
  if (c_.empty() || e < lo_ || e > order_max()) return GaussRat(0);
  return c_[static_cast<std::size_t>(e - lo_)];
}

LaurentSeries LaurentSeries::truncated(int t) const {
  LaurentSeries r = *this;
  if (t < r.trunc_) {
    r.trunc_ = t;
    r.normalize();
  }
  return r;
}

LaurentSeries LaurentSeries::z_derivative() const {
  LaurentSeries r = *this;
  for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] *= GaussRat(lo_ + static_cast<long>(k));
  r.normalize();
  return r;
}

LaurentSeries LaurentSeries::shifted(int k) const {
  LaurentSeries r = *this;
  if (!r.c_.empty()) r.lo_ += k;
  r.trunc_ = add_orders(r.trunc_, k);
  return r;
}

LaurentSeries LaurentSeries::below(int e) const {
  if (e > trunc_) throw Error("series is not known up to the requested exponent");
  LaurentSeries r = *this;
  r.trunc_ = e;
  r.normalize();
  r.trunc_ = kExact;
  return r;
}

LaurentSeries LaurentSeries::inverse(int cap) const {
  if (c_.empty()) throw Error("not a unit in K: series has no known nonzero coefficient");
  const int v = lo_;
  const GaussRat c0inv = c_[0].inverse();
  if (c_.size() == 1 && trunc_ == kExact) return LaurentSeries(-v, {c0inv}, kExact);
  int t = trunc_ == kExact ? cap : add_orders(trunc_, -2 * v);
  long long count = static_cast<long long>(t) + v;  // exponents -v .. t-1
  if (count <= 0) return LaurentSeries(t, {}, t);
  std::vector<GaussRat> d(static_cast<std::size_t>(count));
  d[0] = c0inv;
  for (std::size_t k = 1; k < d.size(); ++k) {
    GaussRat acc;
    for (std::size_t j = 1; j <= k && j < c_.size(); ++j) acc += c_[j] * d[k - j];
    d[k] = -(acc * c0inv);
  }
  return LaurentSeries(-v, std::move(d), t);
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& o) {
  int t = std::min(trunc_, o.trunc_);
  if (o.c_.empty()) {
    trunc_ = t;
    normalize();
    return *this;
  }
  if (c_.empty()) {
    c_ = o.c_;
    lo_ = o.lo_;
    trunc_ = t;
    normalize();
    return *this;
  }
  int lo = std::min(lo_, o.lo_);
  int hi = std::max(order_max(), o.order_max());
  std::vector<GaussRat> r(static_cast<std::size_t>(hi - lo + 1));
  for (std::size_t k = 0; k < c_.size(); ++k) r[static_cast<std::size_t>(lo_ - lo) + k] += c_[k];
  for (std::size_t k = 0; k < o.c_.size(); ++k) r[static_cast<std::size_t>(o.lo_ - lo) + k] += o.c_[k];
  lo_ = lo;
  c_ = std::move(r);
  trunc_ = t;
  normalize();
  return *this;
}

LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& o) { return *this += -o; }

LaurentSeries& LaurentSeries::operator*=(const GaussRat& c) {
  for (auto& x : c_) x *= c;
  normalize();
  return *this;
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  int t = std::min(add_orders(a.trunc_, b.known_valuation()), add_orders(b.trunc_, a.known_valuation()));
  if (a.c_.empty() || b.c_.empty()) return LaurentSeries(0, {}, t);
  std::vector<GaussRat> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      if (!b.c_[j].is_zero()) r[i + j] += a.c_[i] * b.c_[j];
  }
  int lo = a.lo_ + b.lo_;
  if (t != kExact && lo > t) return LaurentSeries(t, {}, t);
  return LaurentSeries(lo, std::move(r), t);
}

bool LaurentSeries::agrees_below(const LaurentSeries& o, int upto) const {
  int limit = std::min({upto, trunc_, o.trunc_});
  int lo = std::min(c_.empty() ? limit : lo_, o.c_.empty() ? limit : o.lo_);
  int hi = std::max(c_.empty() ? lo : order_max(), o.c_.empty() ? lo : o.order_max());
  for (int e = lo; e < limit && e <= hi; ++e)
    if (coeff(e) != o.coeff(e)) return false;
  return true;
}

std::string LaurentSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    os << (first ? "" : " + ") << '(' << c_[k].to_string() << ")z^" << lo_ + static_cast<int>(k);
    first = false;
  }
  if (first) os << '0';
  if (trunc_ != kExact) os << " + O(z^" << trunc_ << ')';
  return os.str();
}

// ---------------------------------------------------------- LaurentMatrix

LaurentMatrix::LaurentMatrix(std::size_t n, int trunc)
    : n_(n), e_(n * n, LaurentSeries::zero(trunc)), trunc_(trunc) {}

LaurentMatrix::LaurentMatrix(std::size_t n, std::vector<LaurentSeries> row_major)
    : n_(n), e_(std::move(row_major)) {
  if (e_.size() != n * n) throw std::invalid_argument("matrix data does not have n*n entries");
  int t = kExact;
  for (const auto& s : e_) t = std::min(t, s.trunc());
  retrunc(t);
}

LaurentMatrix LaurentMatrix::from_constant(const Matrix& m, int exponent, int trunc) {
  const std::size_t n = m.size();
  std::vector<LaurentSeries> e;
  e.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e.push_back(LaurentSeries::monomial(m(i, j), exponent, trunc));
  LaurentMatrix r(n, std::move(e));
  r.retrunc(trunc);
  return r;
}

LaurentMatrix LaurentMatrix::from_coefficients(const std::vector<Matrix>& coeffs, int lowest, int trunc) {
  if (coeffs.empty()) throw std::invalid_argument("no coefficients");
  const std::size_t n = coeffs.front().size();
  std::vector<LaurentSeries> e;
  e.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<GaussRat> c;
      c.reserve(coeffs.size());
      for (const auto& m : coeffs) {
        if (m.size() != n) throw std::invalid_argument("coefficient dimension mismatch");
        c.push_back(m(i, j));
      }
      int lo = lowest;
      if (trunc != kExact && lo > trunc) lo = trunc;
      e.emplace_back(lo, std::move(c), trunc);
    }
  return LaurentMatrix(n, std::move(e));
}

void LaurentMatrix::retrunc(int t) {
  trunc_ = t;
  for (auto& s : e_)
    if (s.trunc() != t) s = s.truncated(t);
}

void LaurentMatrix::set(std::size_t i, std::size_t j, LaurentSeries s) {
  e_[i * n_ + j] = std::move(s);
  retrunc(std::min(trunc_, e_[i * n_ + j].trunc()));
  e_[i * n_ + j] = e_[i * n_ + j].truncated(trunc_);
}

int LaurentMatrix::valuation() const {
  int v = kInfiniteValuation;
  for (const auto& s : e_) v = std::min(v, s.valuation());
  return v;
}

int LaurentMatrix::known_valuation() const { return std::min(valuation(), trunc_); }

bool LaurentMatrix::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const LaurentSeries& s) { return s.is_zero(); });
}

int LaurentMatrix::order_max() const {
  int m = std::numeric_limits<int>::min();
  for (const auto& s : e_)
    if (!s.is_zero()) m = std::max(m, s.order_max());
  return m == std::numeric_limits<int>::min() ? valuation() - 1 : m;
}

Matrix LaurentMatrix::coefficient(int e) const {
  Matrix m(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = (*this)(i, j).coeff(e);
  return m;
}

LaurentMatrix LaurentMatrix::truncated(int t) const {
  LaurentMatrix r = *this;
  if (t < r.trunc_) r.retrunc(t);
  return r;
}

LaurentMatrix LaurentMatrix::z_derivative() const {
  LaurentMatrix r = *this;
  for (auto& s : r.e_) s = s.z_derivative();
  return r;
}

LaurentMatrix LaurentMatrix::shifted(int k) const {
  LaurentMatrix r = *this;
  for (auto& s : r.e_) s = s.shifted(k);
  r.trunc_ = add_orders(trunc_, k);
  return r;
}

LaurentMatrix& LaurentMatrix::operator+=(const LaurentMatrix& o) {
  if (o.n_ != n_) throw std::invalid_argument("dimension mismatch");
  for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
  retrunc(std::min(trunc_, o.trunc_));
  return *this;
}

LaurentMatrix& LaurentMatrix::operator-=(const LaurentMatrix& o) {
  if (o.n_ != n_) throw std::invalid_argument("dimension mismatch");
  for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
  retrunc(std::min(trunc_, o.trunc_));
  return *this;
}

LaurentMatrix& LaurentMatrix::operator*=(const GaussRat& c) {
  for (auto& s : e_) s *= c;
  return *this;
}

bool LaurentMatrix::agrees_below(const LaurentMatrix& o, int upto) const {
  if (o.n_ != n_) return false;
  for (std::size_t k = 0; k < e_.size(); ++k)
    if (!e_[k].agrees_below(o.e_[k], upto)) return false;
  return true;
}

std::string LaurentMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < n_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < n_; ++j) os << (j ? ", " : "") << (*this)(i, j).to_string();
  }
  os << ']';
  return os.str();
}

LaurentMatrix mat_mul(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch in mat_mul");
  const std::size_t n = a.size();
  int t = std::min(add_orders(a.trunc(), b.known_valuation()), add_orders(b.trunc(), a.known_valuation()));
  std::vector<LaurentSeries> e;
  e.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      LaurentSeries acc = LaurentSeries::zero(t);
      for (std::size_t k = 0; k < n; ++k) {
        if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
        acc += (a(i, k) * b(k, j)).truncated(t);
      }
      e.push_back(acc.truncated(t));
    }
  return LaurentMatrix(n, std::move(e));
}

namespace {

LaurentSeries det_rec(const LaurentMatrix& a, std::vector<std::size_t>& rows, std::size_t col) {
  const std::size_t n = a.size();
  if (col == n) return LaurentSeries::constant(GaussRat(1));
  LaurentSeries acc = LaurentSeries::zero();
  int sign = 1;
  for (std::size_t idx = 0; idx < rows.size(); ++idx) {
    std::size_t r = rows[idx];
    if (!a(r, col).is_zero() || !a(r, col).is_exact()) {
      rows.erase(rows.begin() + static_cast<long>(idx));
      LaurentSeries minor = det_rec(a, rows, col + 1);
      rows.insert(rows.begin() + static_cast<long>(idx), r);
      LaurentSeries term = a(r, col) * minor;
      if (sign < 0) term = -term;
      acc += term;
    }
    sign = -sign;
  }
  return acc;
}

}  // namespace

LaurentSeries determinant(const LaurentMatrix& a) {
  std::vector<std::size_t> rows(a.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  return det_rec(a, rows, 0);
}

LaurentMatrix mat_inv(const LaurentMatrix& a, int cap) {
  const std::size_t n = a.size();
  LaurentSeries det = determinant(a);
  if (det.is_zero()) throw Error("not a unit in G(K)");
  std::vector<LaurentSeries> adj(n * n);
  if (n == 1) {
    adj[0] = LaurentSeries::constant(GaussRat(1));
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        // cofactor C_ji of the minor deleting row j, column i
        std::vector<LaurentSeries> m;
        m.reserve((n - 1) * (n - 1));
        for (std::size_t r = 0; r < n; ++r) {
          if (r == j) continue;
          for (std::size_t c = 0; c < n; ++c)
            if (c != i) m.push_back(a(r, c));
        }
        LaurentSeries d = determinant(LaurentMatrix(n - 1, std::move(m)));
        adj[i * n + j] = ((i + j) % 2) ? -d : d;
      }
  }
  LaurentMatrix adjm(n, std::move(adj));
  int kadj = adjm.known_valuation();
  int dcap = kadj == kExact ? cap : add_orders(cap, -kadj);
  LaurentSeries dinv = det.inverse(dcap);
  std::vector<LaurentSeries> e;
  e.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e.push_back(adjm(i, j) * dinv);
  int t = std::min(add_orders(adjm.trunc(), dinv.known_valuation()), add_orders(dinv.trunc(), kadj));
  return LaurentMatrix(n, std::move(e)).truncated(t);
}

LaurentMatrix mat_exp_nilpotent(const LaurentMatrix& nmat, int cap) {
  const std::size_t n = nmat.size();
  const int kv = nmat.known_valuation();
  LaurentMatrix sum = LaurentMatrix::identity(n);
  LaurentMatrix term = sum;

  if (nmat.is_exact()) {
    LaurentMatrix p = nmat;
    for (std::size_t k = 1; k < n; ++k) p = mat_mul(p, nmat);
    if (p.is_zero()) {
      for (std::size_t k = 1; k < n; ++k) {
        term = mat_mul(term, nmat) * GaussRat(Rational(1, static_cast<unsigned long>(k)));
        sum += term;
      }
      return sum;
    }
  }
  if (kv > 0) {
    if (nmat.is_exact()) sum = sum.truncated(cap);
    for (unsigned long k = 1;; ++k) {
      term = mat_mul(term, nmat) * GaussRat(Rational(1, k));
      sum += term;
      if (term.known_valuation() >= sum.trunc()) break;
    }
    return sum;
  }
  if (kv == 0) {
    for (std::size_t k = 1; k <= n; ++k) {
      term = mat_mul(term, nmat) * GaussRat(Rational(1, static_cast<unsigned long>(k)));
      sum += term;
    }
    if (term.is_zero()) return sum;
  }
  throw Error("exponential not exactly computable");
}

}  // namespace wildhodge
