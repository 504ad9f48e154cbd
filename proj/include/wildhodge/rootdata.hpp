#pragma once

// Root data of GL_n with the diagonal torus: weights, roots, parabolics
// containing T, characters, and parahoric membership tests.

#include <cstddef>
#include <set>
#include <vector>

#include "wildhodge/exactfield.hpp"

namespace wildhodge {

/// Rational cocharacter (theta_1, ..., theta_n).
struct Weight {
  std::vector<Rational> v;

  Weight() = default;
  explicit Weight(std::vector<Rational> entries) : v(std::move(entries)) {
    for (auto& x : v) x.canonicalize();
  }
  static Weight zero(std::size_t n) { return Weight(std::vector<Rational>(n)); }

  std::size_t size() const { return v.size(); }
  const Rational& operator[](std::size_t i) const { return v[i]; }
  /// r(theta) <= 1 for every root.
  bool is_valid() const;
  /// r(theta) < 1 for every root.
  bool is_small() const;
  friend bool operator==(const Weight& a, const Weight& b) { return a.v == b.v; }
};

/// The root e_i - e_j (0-based indices).
struct Root {
  std::size_t i = 0, j = 1;
  Root negated() const { return {j, i}; }
  friend auto operator<=>(const Root&, const Root&) = default;
};

std::vector<Root> all_roots(std::size_t n);
Rational root_value(const Weight& theta, const Root& r);
/// ceil(-r(theta))
long m_r(const Weight& theta, const Root& r);

/// val(g_ij) + theta_i - theta_j >= 0 for all entries; g must be invertible.
bool parahoric_member(const LaurentMatrix& g, const Weight& theta);
bool lie_parahoric_member(const LaurentMatrix& a, const Weight& theta);

/// A parabolic subgroup containing T, stored as an ordered block assignment:
/// e_i - e_j is a root of P iff block(i) <= block(j).
class ParabolicSpec {
 public:
  ParabolicSpec() = default;
  /// block[i] is the position of coordinate i's Levi block; values are
  /// renumbered to 0..b-1 keeping their order.
  explicit ParabolicSpec(std::vector<int> block);

  static ParabolicSpec whole(std::size_t n) { return ParabolicSpec(std::vector<int>(n, 0)); }
  /// Derives the block order from a root subset. Throws std::invalid_argument
  /// when the subset is not the root set of a parabolic containing T.
  static ParabolicSpec from_roots(std::size_t n, const std::set<Root>& roots);

  std::size_t size() const { return block_.size(); }
  int num_blocks() const { return nblocks_; }
  int block_of(std::size_t i) const { return block_[i]; }
  const std::vector<int>& blocks() const { return block_; }
  bool is_proper() const { return nblocks_ > 1; }

  bool contains(const Root& r) const { return block_[r.i] <= block_[r.j]; }
  bool in_levi(const Root& r) const { return block_[r.i] == block_[r.j]; }
  /// Roots of the unipotent radical: block(i) < block(j).
  bool in_radical(const Root& r) const { return block_[r.i] < block_[r.j]; }
  std::set<Root> root_subset() const;
  ParabolicSpec opposite() const;
  /// Is the constant matrix in P (zero outside the block pattern)?
  bool contains_matrix(const Matrix& m) const;
  /// Coordinates of each block, in block order.
  std::vector<std::vector<std::size_t>> block_members() const;

  friend bool operator==(const ParabolicSpec& a, const ParabolicSpec& b) { return a.block_ == b.block_; }
  friend bool operator<(const ParabolicSpec& a, const ParabolicSpec& b) {
    return a.nblocks_ != b.nblocks_ ? a.nblocks_ < b.nblocks_ : a.block_ < b.block_;
  }

 private:
  std::vector<int> block_;
  int nblocks_ = 0;
};

/// { r : r(theta) >= 0 }, blocks = level sets of theta in descending order.
ParabolicSpec parabolic_from_weight(const Weight& theta);

/// A closed root subset whose union with its negative is everything.
bool roots_closed(std::size_t n, const std::set<Root>& roots);
bool roots_cover(std::size_t n, const std::set<Root>& roots);

/// Integer character of the torus (chi_1, ..., chi_n).
struct Character {
  std::vector<long> v;
  Character() = default;
  explicit Character(std::vector<long> entries) : v(std::move(entries)) {}
  std::size_t size() const { return v.size(); }
  bool constant_on_blocks(const ParabolicSpec& p) const;
  /// chi_i <= chi_j whenever e_i - e_j lies in the unipotent radical.
  bool antidominant(const ParabolicSpec& p) const;
  friend Character operator+(const Character& a, const Character& b);
  friend bool operator==(const Character& a, const Character& b) { return a.v == b.v; }
};

Rational pairing(const Weight& theta, const Character& chi);
Rational parahoric_degree(long degL, const std::vector<Weight>& thetas, const Character& chi);

/// Proper parabolics containing T (ordered set partitions with >= 2 blocks).
std::vector<ParabolicSpec> enumerate_parabolics_containing_T(std::size_t n);

/// Which central torus the characters must be trivial on.
enum class CenterConvention { kCenterOfG, kCenterOfP };

/// Connected components of the coordinate graph joined by the roots of P
/// (including negatives of Levi roots). Each component carries one factor of
/// the torus part of Z(P); for a parabolic it is always a single component.
std::vector<std::vector<std::size_t>> center_components(const ParabolicSpec& p);

/// Generators of the cone of anti-dominant characters of P that are trivial
/// on the chosen center: one balanced "cut" character per block boundary.
std::vector<Character> fundamental_characters(const ParabolicSpec& p,
                                              CenterConvention convention = CenterConvention::kCenterOfG);

}  // namespace wildhodge
