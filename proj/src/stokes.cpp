#include "wildhodge/stokes.hpp"

#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <set>
#include <sstream>
#include <stdexcept>

namespace wildhodge {

namespace {

using Real = boost::multiprecision::mpfr_float_50;

Real to_real(const Rational& q) {
  Real num(q.get_num().get_str()), den(q.get_den().get_str());
  return num / den;
}

Real pi() { return boost::math::constants::pi<Real>(); }

Real two_pi() { return 2 * pi(); }

// angle in [0, 2 pi)
Real value(const ExactAngle& a) {
  Real arg = atan2(to_real(a.base.im()), to_real(a.base.re()));
  Real v = arg / a.k + to_real(a.pi_offset) * pi();
  Real tp = two_pi();
  v -= tp * floor(v / tp);
  // an angle that is exactly 0 mod 2 pi may come out as 2 pi - ulp
  if (v >= tp - Real("1e-40")) v = 0;
  return v;
}

}  // namespace

double ExactAngle::radians() const { return static_cast<double>(value(*this)); }

ExactAngle ExactAngle::rotated(const Rational& pi_multiple) const {
  ExactAngle r = *this;
  r.pi_offset += pi_multiple;
  r.pi_offset.canonicalize();
  return r.normalized();
}

ExactAngle ExactAngle::normalized() const {
  Real arg = atan2(to_real(base.im()), to_real(base.re()));
  Real turns = (arg / k + to_real(pi_offset) * pi()) / two_pi();
  ExactAngle r = *this;
  r.pi_offset -= 2 * static_cast<long>(floor(turns));
  r.pi_offset.canonicalize();
  return r;
}

bool ExactAngle::same_direction(const ExactAngle& o) const {
  long kk = static_cast<long>(k) * o.k;
  Rational R = kk * (pi_offset - o.pi_offset);
  R.canonicalize();
  Rational four_r = 4 * R;
  four_r.canonicalize();
  if (!is_integer(four_r)) return false;
  long e = four_r.get_num().get_si() % 8;
  if (e < 0) e += 8;
  GaussRat w = pow(base, static_cast<unsigned>(o.k)) * pow(o.base.conj(), static_cast<unsigned>(k));
  w = w * pow(GaussRat(1, 1), static_cast<unsigned>(e));
  if (!w.is_real() || sgn(w.re()) <= 0) return false;
  // k1 k2 (phi1 - phi2) is a multiple of 2 pi; the numeric gap picks out 0
  Real d = value(*this) - value(o);
  Real tp = two_pi();
  d -= tp * floor(d / tp + Real(0.5));
  return abs(d) < pi() / kk;
}

RootLeading leading_term(const IrregularType& q, const Root& r) {
  LaurentSeries qr = q.entry(r.i) - q.entry(r.j);
  RootLeading out{r, GaussRat(), 0};
  if (qr.is_zero()) return out;
  int v = qr.valuation();
  if (v >= 0) throw Error("irregular type has a nonnegative exponent");
  out.c = qr.coeff(v);
  out.k = -v;
  return out;
}

ParabolicSpec StokesDiagram::levi_blocks() const {
  std::size_t n = size();
  std::vector<int> block(n, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (block[i] >= 0) continue;
    block[i] = next;
    for (std::size_t j = i + 1; j < n; ++j)
      if (block[j] < 0 && Q.entry(i) == Q.entry(j)) block[j] = next;
    ++next;
  }
  return ParabolicSpec(block);
}

StokesDiagram anti_stokes(const IrregularType& q) {
  StokesDiagram d;
  d.Q = q;
  for (const Root& r : all_roots(q.size())) {
    RootLeading lt = leading_term(q, r);
    if (lt.k == 0) {
      d.levi_roots.push_back(r);
      continue;
    }
    d.leading.push_back(lt);
    for (int m = 0; m < lt.k; ++m) {
      ExactAngle a{lt.c, lt.k, Rational(2 * m - 1, lt.k)};
      a.pi_offset.canonicalize();
      a = a.normalized();
      bool merged = false;
      for (auto& dir : d.directions)
        if (dir.angle.same_direction(a)) {
          dir.roots.push_back(r);
          merged = true;
          break;
        }
      if (!merged) d.directions.push_back({a, {r}});
    }
  }
  if (d.leading.empty()) throw Error("trivial irregular type for the adjoint action");

  std::vector<std::pair<Real, std::size_t>> order;
  for (std::size_t i = 0; i < d.directions.size(); ++i) order.emplace_back(value(d.directions[i].angle), i);
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<AntiStokesDirection> sorted;
  for (const auto& [v, i] : order) {
    sorted.push_back(d.directions[i]);
    std::sort(sorted.back().roots.begin(), sorted.back().roots.end());
  }
  d.directions = std::move(sorted);

  d.k = 0;
  d.common_order = true;
  for (const auto& lt : d.leading) {
    if (d.k != 0 && lt.k != d.k) d.common_order = false;
    d.k = std::max(d.k, lt.k);
  }
  auto count = static_cast<long>(d.directions.size());
  if (d.common_order && count % (2 * d.k) == 0) d.l = static_cast<int>(count / (2 * d.k));
  return d;
}

const std::vector<Root>& stokes_group_basis(const StokesDiagram& d, std::size_t index) {
  if (index >= d.directions.size()) throw std::invalid_argument("direction index out of range");
  return d.directions[index].roots;
}

std::optional<std::size_t> find_direction(const StokesDiagram& d, const ExactAngle& a) {
  for (std::size_t i = 0; i < d.directions.size(); ++i)
    if (d.directions[i].angle.same_direction(a)) return i;
  return std::nullopt;
}

namespace {

// roots r with exp(q_r) decaying along delta, or nullopt when some leading
// term is (numerically) oscillatory there
std::optional<std::set<Root>> decaying_roots(const StokesDiagram& d, const Real& delta) {
  std::set<Root> out;
  for (const auto& lt : d.leading) {
    Real kd = lt.k * delta;
    Real re = to_real(lt.c.re()) * cos(kd) + to_real(lt.c.im()) * sin(kd);
    Real scale = abs(to_real(lt.c.re())) + abs(to_real(lt.c.im()));
    if (abs(re) < scale * Real("1e-30")) return std::nullopt;
    if (re < 0) out.insert(lt.root);
  }
  return out;
}

}  // namespace

HalfPeriods half_periods(const StokesDiagram& d, std::size_t d1) {
  if (!d.l) throw Error("half-period structure undefined for mixed leading orders");
  std::size_t count = d.directions.size();
  if (d1 >= count) throw std::invalid_argument("direction index out of range");
  auto l = static_cast<std::size_t>(*d.l);
  HalfPeriods h;
  h.base = d1;
  std::set<Root> up, um;
  for (std::size_t t = 0; t < l; ++t) {
    std::size_t a = (d1 + t) % count, b = (d1 + l + t) % count;
    h.plus_directions.push_back(a);
    h.minus_directions.push_back(b);
    up.insert(d.directions[a].roots.begin(), d.directions[a].roots.end());
    um.insert(d.directions[b].roots.begin(), d.directions[b].roots.end());
  }

  // Certify U_+ by decay at the middle of the arc d_1 .. d_l. A root decays
  // there iff it supports a direction of the arc, because each decay sector is
  // pi/k wide and the arc is shorter than pi/k.
  Real a = value(d.directions[d1].angle);
  Real b = value(d.directions[h.plus_directions.back()].angle);
  if (b < a) b += two_pi();
  Real delta = (a + b) / 2;
  std::optional<std::set<Root>> dec;
  for (int j = 0; j < 8 && !dec; ++j) {
    dec = decaying_roots(d, delta);
    if (!dec) delta += pi() / (d.k * Real(1 << (j + 4)));
  }
  if (!dec || *dec != up) throw Error("half-period certification failed");
  std::set<Root> neg;
  for (const Root& r : up) neg.insert(r.negated());
  if (neg != um) throw Error("half-period certification failed");

  h.U_plus.assign(up.begin(), up.end());
  h.U_minus.assign(um.begin(), um.end());
  h.delta = static_cast<double>(delta - two_pi() * floor(delta / two_pi()));

  std::set<Root> pr = up, mr = um;
  for (const Root& r : d.levi_roots) {
    pr.insert(r);
    mr.insert(r);
  }
  try {
    h.P_plus = ParabolicSpec::from_roots(d.size(), pr);
    h.P_minus = ParabolicSpec::from_roots(d.size(), mr);
  } catch (const std::invalid_argument&) {
    throw Error("half-period roots do not form a parabolic");
  }
  return h;
}

DimensionCount stokes_dim_check(const StokesDiagram& d, const HalfPeriods& h) {
  DimensionCount c;
  for (const auto& dir : d.directions) c.lhs += static_cast<long>(dir.roots.size());
  c.rhs = d.k * static_cast<long>(h.U_plus.size() + h.U_minus.size());
  return c;
}

DimensionCount stokes_dim_check(const StokesDiagram& d) { return stokes_dim_check(d, half_periods(d, 0)); }

bool rotation_invariant(const StokesDiagram& d) {
  Rational step(1, d.k);
  step.canonicalize();
  for (const auto& dir : d.directions) {
    auto hit = find_direction(d, dir.angle.rotated(step));
    if (!hit) return false;
  }
  return true;
}

bool stokes_factor_supported(const StokesDiagram& d, std::size_t index, const Matrix& s) {
  const auto& roots = stokes_group_basis(d, index);
  std::size_t n = d.size();
  if (s.size() != n) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        if (s(i, j) != GaussRat(1)) return false;
      } else if (!s(i, j).is_zero() && std::find(roots.begin(), roots.end(), Root{i, j}) == roots.end()) {
        return false;
      }
    }
  return true;
}

std::string plot_data_csv(const StokesDiagram& d) {
  std::ostringstream out;
  out << "angle,roots\n";
  out.precision(17);
  for (const auto& dir : d.directions) {
    out << dir.angle.radians() << ',';
    for (std::size_t t = 0; t < dir.roots.size(); ++t)
      out << (t ? " " : "") << dir.roots[t].i + 1 << '-' << dir.roots[t].j + 1;
    out << '\n';
  }
  return out.str();
}

GroupoidPresentation groupoid_presentation(int genus, const std::vector<StokesDiagram>& diagrams) {
  if (genus < 0) throw std::invalid_argument("negative genus");
  GroupoidPresentation p;
  p.genus = genus;
  for (int g = 1; g <= genus; ++g) {
    std::string a = "A" + std::to_string(g), b = "B" + std::to_string(g);
    p.generators.push_back("alpha" + std::to_string(g));
    p.generators.push_back("beta" + std::to_string(g));
    p.relation.insert(p.relation.end(), {a, b, a + "^-1", b + "^-1"});
  }
  for (std::size_t x = 1; x <= diagrams.size(); ++x) {
    std::string sx = std::to_string(x);
    p.generators.push_back("gamma" + sx);
    std::size_t count = diagrams[x - 1].directions.size();
    for (std::size_t j = 1; j <= count; ++j) p.generators.push_back("gamma~" + sx + "," + std::to_string(j));
    p.relation.push_back("C" + sx + "^-1");
    p.relation.push_back("h" + sx);
    for (std::size_t j = count; j >= 1; --j) p.relation.push_back("S" + sx + "," + std::to_string(j));
    p.relation.push_back("C" + sx);
  }
  for (std::size_t x = 2; x <= diagrams.size(); ++x) p.generators.push_back("gamma1," + std::to_string(x));
  p.connecting_paths = diagrams.empty() ? 0 : diagrams.size() - 1;
  return p;
}

}  // namespace wildhodge
