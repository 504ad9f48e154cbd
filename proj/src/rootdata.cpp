#include "wildhodge/rootdata.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace wildhodge {

namespace {

std::pair<Rational, Rational> extremes(const Weight& w) {
  if (w.v.empty()) return {Rational(0), Rational(0)};
  auto [lo, hi] = std::minmax_element(w.v.begin(), w.v.end());
  return {*lo, *hi};
}

void check_dims(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("dimension mismatch between weight and matrix");
}

bool entrywise_bounded(const LaurentMatrix& a, const Weight& theta) {
  check_dims(a.size(), theta.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      int kv = a(i, j).known_valuation();
      if (kv == kExact) continue;
      if (Rational(kv) + theta[i] - theta[j] < 0) return false;
    }
  return true;
}

}  // namespace

bool Weight::is_valid() const {
  auto [lo, hi] = extremes(*this);
  return hi - lo <= 1;
}

bool Weight::is_small() const {
  auto [lo, hi] = extremes(*this);
  return hi - lo < 1;
}

std::vector<Root> all_roots(std::size_t n) {
  std::vector<Root> r;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) r.push_back({i, j});
  return r;
}

Rational root_value(const Weight& theta, const Root& r) {
  if (r.i == r.j || r.i >= theta.size() || r.j >= theta.size())
    throw std::invalid_argument("root indices out of range");
  return theta[r.i] - theta[r.j];
}

long m_r(const Weight& theta, const Root& r) { return wildhodge::ceil(-root_value(theta, r)).get_num().get_si(); }

bool parahoric_member(const LaurentMatrix& g, const Weight& theta) {
  check_dims(g.size(), theta.size());
  if (determinant(g).is_zero()) throw Error("not a unit in G(K)");
  return entrywise_bounded(g, theta);
}

bool lie_parahoric_member(const LaurentMatrix& a, const Weight& theta) { return entrywise_bounded(a, theta); }

ParabolicSpec::ParabolicSpec(std::vector<int> block) : block_(std::move(block)) {
  std::vector<int> vals = block_;
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  for (auto& b : block_) b = static_cast<int>(std::lower_bound(vals.begin(), vals.end(), b) - vals.begin());
  nblocks_ = static_cast<int>(vals.size());
}

ParabolicSpec ParabolicSpec::from_roots(std::size_t n, const std::set<Root>& roots) {
  for (const auto& r : roots)
    if (r.i >= n || r.j >= n || r.i == r.j) throw std::invalid_argument("invalid root in subset");
  if (!roots_cover(n, roots) || !roots_closed(n, roots))
    throw std::invalid_argument("root subset is not the root set of a parabolic containing T");
  // block position = number of coordinates strictly before i in the preorder
  std::vector<int> block(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (k != i && roots.count({k, i}) && !roots.count({i, k})) ++block[i];
  ParabolicSpec p(block);
  if (p.root_subset() != roots) throw std::invalid_argument("root subset is not parabolic");
  return p;
}

std::set<Root> ParabolicSpec::root_subset() const {
  std::set<Root> s;
  for (const auto& r : all_roots(size()))
    if (contains(r)) s.insert(r);
  return s;
}

ParabolicSpec ParabolicSpec::opposite() const {
  std::vector<int> b(block_);
  for (auto& x : b) x = nblocks_ - 1 - x;
  return ParabolicSpec(b);
}

bool ParabolicSpec::contains_matrix(const Matrix& m) const {
  if (m.size() != size()) throw std::invalid_argument("dimension mismatch");
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      if (i != j && !contains({i, j}) && !m(i, j).is_zero()) return false;
  return true;
}

std::vector<std::vector<std::size_t>> ParabolicSpec::block_members() const {
  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(nblocks_));
  for (std::size_t i = 0; i < size(); ++i) out[static_cast<std::size_t>(block_[i])].push_back(i);
  return out;
}

ParabolicSpec parabolic_from_weight(const Weight& theta) {
  std::vector<Rational> vals = theta.v;
  std::sort(vals.begin(), vals.end(), std::greater<>());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  std::vector<int> block(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i)
    block[i] = static_cast<int>(std::find(vals.begin(), vals.end(), theta[i]) - vals.begin());
  return ParabolicSpec(block);
}

bool roots_closed(std::size_t n, const std::set<Root>& roots) {
  for (const auto& a : roots)
    for (const auto& b : roots)
      if (a.j == b.i && a.i != b.j && !roots.count({a.i, b.j})) return false;
  (void)n;
  return true;
}

bool roots_cover(std::size_t n, const std::set<Root>& roots) {
  for (const auto& r : all_roots(n))
    if (!roots.count(r) && !roots.count(r.negated())) return false;
  return true;
}

bool Character::constant_on_blocks(const ParabolicSpec& p) const {
  if (size() != p.size()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      if (p.block_of(i) == p.block_of(j) && v[i] != v[j]) return false;
  return true;
}

bool Character::antidominant(const ParabolicSpec& p) const {
  if (size() != p.size()) return false;
  for (const auto& r : all_roots(size()))
    if (p.in_radical(r) && v[r.i] > v[r.j]) return false;
  return true;
}

Character operator+(const Character& a, const Character& b) {
  if (a.size() != b.size()) throw std::invalid_argument("character dimension mismatch");
  Character c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c.v[i] += b.v[i];
  return c;
}

Rational pairing(const Weight& theta, const Character& chi) {
  if (theta.size() != chi.size()) throw std::invalid_argument("weight/character dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < chi.size(); ++i) s += theta[i] * chi.v[i];
  return s;
}

Rational parahoric_degree(long degL, const std::vector<Weight>& thetas, const Character& chi) {
  Rational d = degL;
  for (const auto& t : thetas) d += pairing(t, chi);
  return d;
}

std::vector<ParabolicSpec> enumerate_parabolics_containing_T(std::size_t n) {
  if (n > 5) throw std::invalid_argument("enumeration of parabolics is limited to n <= 5");
  std::vector<ParabolicSpec> out;
  std::vector<int> a(n, 0);
  // every assignment of coordinates to positions 0..n-1 that is onto 0..b-1
  for (;;) {
    int b = n ? *std::max_element(a.begin(), a.end()) + 1 : 0;
    std::vector<bool> hit(static_cast<std::size_t>(b), false);
    for (int x : a) hit[static_cast<std::size_t>(x)] = true;
    if (b >= 2 && std::all_of(hit.begin(), hit.end(), [](bool h) { return h; })) out.emplace_back(a);
    std::size_t k = 0;
    while (k < n && a[k] == static_cast<int>(n) - 1) a[k++] = 0;
    if (k == n) break;
    ++a[k];
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::vector<std::size_t>> center_components(const ParabolicSpec& p) {
  const std::size_t n = p.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& r : all_roots(n))
    if (p.contains(r)) parent[find(r.i)] = find(r.j);
  std::map<std::size_t, std::vector<std::size_t>> comps;
  for (std::size_t i = 0; i < n; ++i) comps[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : comps) out.push_back(members);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Character> fundamental_characters(const ParabolicSpec& p, CenterConvention convention) {
  const auto members = p.block_members();
  const long n = static_cast<long>(p.size());
  std::vector<Character> out;
  long before = 0;
  for (int cut = 1; cut < p.num_blocks(); ++cut) {
    before += static_cast<long>(members[static_cast<std::size_t>(cut - 1)].size());
    long after = n - before;
    long g = std::gcd(before, after);
    Character chi(std::vector<long>(p.size()));
    for (std::size_t i = 0; i < p.size(); ++i) chi.v[i] = p.block_of(i) < cut ? -after / g : before / g;
    out.push_back(std::move(chi));
  }
  if (convention == CenterConvention::kCenterOfP) {
    for (const auto& comp : center_components(p))
      for (const auto& chi : out) {
        long s = 0;
        for (auto i : comp) s += chi.v[i];
        if (s != 0) throw Error("cut character is not trivial on the center of P");
      }
  }
  return out;
}

}  // namespace wildhodge
