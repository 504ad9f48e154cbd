#include "wildhodge/betti.hpp"

#include <stdexcept>

namespace wildhodge {

std::vector<Matrix> StokesRep::generators() const {
  std::vector<Matrix> out;
  for (const auto& [a, b] : handles) {
    out.push_back(a);
    out.push_back(b);
  }
  for (const auto& x : punctures) {
    out.push_back(x.C);
    out.push_back(x.h);
    out.insert(out.end(), x.S.begin(), x.S.end());
  }
  return out;
}

bool in_stabilizer(const PunctureData& x, const Matrix& k) {
  if (!x.diagram) return true;
  const auto& q = x.diagram->Q;
  for (std::size_t i = 0; i < k.size(); ++i)
    for (std::size_t j = 0; j < k.size(); ++j)
      if (!k(i, j).is_zero() && !(q.entry(i) == q.entry(j))) return false;
  return true;
}

bool StokesRep::structurally_valid() const {
  for (const auto& x : punctures) {
    if (!in_stabilizer(x, x.h)) return false;
    std::size_t count = x.diagram ? x.diagram->directions.size() : 0;
    if (x.S.size() != count) return false;
    for (std::size_t j = 0; j < count; ++j)
      if (!stokes_factor_supported(*x.diagram, j, x.S[j])) return false;
  }
  return true;
}

bool FilteredStokesRep::filtered() const {
  if (weights.size() != rep.punctures.size()) return false;
  for (std::size_t x = 0; x < weights.size(); ++x)
    if (!parabolic_from_weight(weights[x]).contains_matrix(rep.punctures[x].h)) return false;
  return true;
}

namespace {

void require_size(const Matrix& m, std::size_t n) {
  if (m.size() != n) throw Error("dimension mismatch among factors");
}

void require_sizes(const StokesRep& rho) {
  for (const auto& m : rho.generators()) require_size(m, rho.n);
}

}  // namespace

bool check_relation(const StokesRep& rho) {
  require_sizes(rho);
  Matrix prod = Matrix::identity(rho.n);
  for (const auto& [a, b] : rho.handles) prod = prod * a * b * inverse(a) * inverse(b);
  for (const auto& x : rho.punctures) {
    Matrix local = inverse(x.C) * x.h;
    for (std::size_t j = x.S.size(); j-- > 0;) local = local * x.S[j];
    prod = prod * local * x.C;
  }
  return prod.is_identity();
}

StokesRep group_act(const Matrix& g, const std::vector<Matrix>& k, const StokesRep& rho) {
  require_sizes(rho);
  require_size(g, rho.n);
  if (k.size() != rho.punctures.size()) throw Error("one k_x per puncture expected");
  Matrix gi = inverse(g);
  StokesRep out = rho;
  for (auto& [a, b] : out.handles) {
    a = g * a * gi;
    b = g * b * gi;
  }
  for (std::size_t x = 0; x < k.size(); ++x) {
    require_size(k[x], rho.n);
    if (!in_stabilizer(rho.punctures[x], k[x])) throw Error("k_x outside H_x");
    Matrix ki = inverse(k[x]);
    auto& p = out.punctures[x];
    p.C = k[x] * p.C * gi;
    p.h = k[x] * p.h * ki;
    for (auto& s : p.S) s = k[x] * s * ki;
  }
  return out;
}

bool is_compatible(const StokesRep& rho, const ParabolicSpec& p) {
  if (p.size() != rho.n) throw Error("dimension mismatch among factors");
  for (const auto& m : rho.generators())
    if (!p.contains_matrix(m)) return false;
  return true;
}

Rational degree_loc(const FilteredStokesRep& rho, const ParabolicSpec& p, const Character& chi) {
  if (!is_compatible(rho, p)) throw Error("representation not compatible with the parabolic");
  if (chi.size() != p.size() || !chi.constant_on_blocks(p)) throw Error("character not constant on the blocks of the parabolic");
  if (rho.weights.size() != rho.rep.punctures.size()) throw Error("one weight per puncture expected");
  Rational sum = 0;
  for (const auto& w : rho.weights) sum += pairing(w, chi);
  return sum;
}

bool degree_zero(const FilteredStokesRep& rho) {
  Rational sum = 0;
  for (const auto& w : rho.weights)
    for (const auto& x : w.v) sum += x;
  return sgn(sum) == 0;
}

const char* to_string(Stability s) {
  switch (s) {
    case Stability::kStable: return "stable";
    case Stability::kSemistable: return "semistable";
    case Stability::kUnstable: return "unstable";
  }
  return "?";
}

bool operator==(const StabilityVerdict& a, const StabilityVerdict& b) {
  if (a.status != b.status || a.compatible_parabolics != b.compatible_parabolics) return false;
  if (a.witnesses.size() != b.witnesses.size()) return false;
  for (std::size_t i = 0; i < a.witnesses.size(); ++i) {
    const auto &x = a.witnesses[i], &y = b.witnesses[i];
    if (!(x.P == y.P) || !(x.chi == y.chi) || x.degree != y.degree) return false;
  }
  return true;
}

namespace {

struct Slot {
  bool compatible = false;
  std::vector<StabilityWitness> low;  // degree <= 0
  bool negative = false;
};

Slot evaluate(const FilteredStokesRep& rho, const ParabolicSpec& p) {
  Slot s;
  s.compatible = is_compatible(rho, p);
  if (!s.compatible) return s;
  for (const auto& chi : fundamental_characters(p, CenterConvention::kCenterOfG)) {
    Rational d = degree_loc(rho, p, chi);
    if (sgn(d) <= 0) s.low.push_back({p, chi, d});
    if (sgn(d) < 0) s.negative = true;
  }
  return s;
}

void guard(const FilteredStokesRep& rho) {
  require_sizes(rho.rep);
  if (rho.rep.n > 5) throw std::invalid_argument("stability check supports n <= 5");
  if (rho.weights.size() != rho.rep.punctures.size()) throw Error("one weight per puncture expected");
  for (const auto& w : rho.weights)
    if (w.size() != rho.rep.n) throw Error("dimension mismatch among factors");
}

StabilityVerdict merge(const std::vector<Slot>& slots) {
  StabilityVerdict v;
  bool negative = false;
  for (const auto& s : slots) {
    if (!s.compatible) continue;
    ++v.compatible_parabolics;
    v.witnesses.insert(v.witnesses.end(), s.low.begin(), s.low.end());
    negative = negative || s.negative;
  }
  v.status = negative ? Stability::kUnstable : v.witnesses.empty() ? Stability::kStable : Stability::kSemistable;
  return v;
}

}  // namespace

StabilityVerdict check_stability_serial(const FilteredStokesRep& rho) {
  guard(rho);
  auto ps = enumerate_parabolics_containing_T(rho.rep.n);
  std::vector<Slot> slots(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) slots[i] = evaluate(rho, ps[i]);
  return merge(slots);
}

StabilityVerdict check_stability(const FilteredStokesRep& rho) {
  guard(rho);
  auto ps = enumerate_parabolics_containing_T(rho.rep.n);
  std::vector<Slot> slots(ps.size());
  auto count = static_cast<long>(ps.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) slots[static_cast<std::size_t>(i)] = evaluate(rho, ps[static_cast<std::size_t>(i)]);
  return merge(slots);
}

StokesRep genus0_gl2_solution(const Rational& x, const Rational& a) {
  Rational one_ax = 1 + a * x;
  if (sgn(one_ax) == 0) throw Error("1 + ax must be nonzero");
  Rational b = -x / one_ax;
  Rational one_ab = 1 + a * b;
  if (sgn(one_ab) == 0) throw Error("1 + ab must be nonzero");
  Rational c = -a / one_ab;

  auto lower = [](const Rational& v) { return Matrix::identity(2) + Matrix::unit(2, 1, 0) * GaussRat(v); };
  auto upper = [](const Rational& v) { return Matrix::identity(2) + Matrix::unit(2, 0, 1) * GaussRat(v); };

  std::vector<LaurentSeries> q{LaurentSeries::monomial(1, -2), LaurentSeries::monomial(-1, -2)};
  PunctureData p;
  p.diagram = anti_stokes(IrregularType::from_diagonal(q));
  p.C = Matrix::identity(2);
  p.S = {lower(x), upper(a), lower(b), upper(c)};
  Rational h0 = 1 / one_ax, h1 = 1 / one_ab;
  p.h = Matrix::diagonal({GaussRat(h0), GaussRat(h1)});

  StokesRep rho;
  rho.n = 2;
  rho.punctures.push_back(std::move(p));
  return rho;
}

}  // namespace wildhodge
