#pragma once

// Anti-Stokes directions of a diagonal irregular type, Stokes groups,
// half-periods and the dimension count of the space of Stokes data.

#include <optional>
#include <string>
#include <vector>

#include "wildhodge/connection.hpp"
#include "wildhodge/rootdata.hpp"

namespace wildhodge {

/// The angle Arg(base)/k + pi_offset * pi, taken modulo 2 pi.
struct ExactAngle {
  GaussRat base{1};
  int k = 1;
  Rational pi_offset{0};

  /// Radians in [0, 2 pi).
  double radians() const;
  /// Exact equality modulo 2 pi.
  bool same_direction(const ExactAngle& o) const;
  ExactAngle rotated(const Rational& pi_multiple) const;
  /// Same angle with pi_offset shifted so that radians() is in [0, 2 pi).
  ExactAngle normalized() const;
};

/// Leading term c_r z^{-k_r} of q_r = r(Q) for a root with q_r != 0.
struct RootLeading {
  Root root;
  GaussRat c;
  int k = 0;
};

struct AntiStokesDirection {
  ExactAngle angle;
  std::vector<Root> roots;  // R(d), sorted
};

struct StokesDiagram {
  IrregularType Q;
  std::vector<RootLeading> leading;   // roots with q_r != 0
  std::vector<Root> levi_roots;       // roots with q_r == 0 (roots of H)
  std::vector<AntiStokesDirection> directions;  // sorted by angle in [0, 2 pi)
  int k = 0;                          // max leading order
  bool common_order = false;          // all k_r equal
  std::optional<int> l;               // #A / 2k when defined

  std::size_t size() const { return Q.size(); }
  /// Coordinates i, j lie in one block of H iff q_i = q_j.
  ParabolicSpec levi_blocks() const;
};

struct HalfPeriods {
  std::size_t base = 0;  // index of d_1
  std::vector<std::size_t> plus_directions, minus_directions;
  std::vector<Root> U_plus, U_minus;
  ParabolicSpec P_plus, P_minus;
  /// The test direction at which the decay of U_plus was certified.
  double delta = 0;
};

RootLeading leading_term(const IrregularType& q, const Root& r);

/// Throws Error("trivial irregular type for the adjoint action") when every q_r vanishes.
StokesDiagram anti_stokes(const IrregularType& q);
const std::vector<Root>& stokes_group_basis(const StokesDiagram& d, std::size_t index);
/// Index of the direction equal to `a`, if any.
std::optional<std::size_t> find_direction(const StokesDiagram& d, const ExactAngle& a);

HalfPeriods half_periods(const StokesDiagram& d, std::size_t d1 = 0);

struct DimensionCount {
  long lhs = 0;  // sum over directions of #R(d)
  long rhs = 0;  // k (#U_plus + #U_minus)
};
DimensionCount stokes_dim_check(const StokesDiagram& d, const HalfPeriods& h);
DimensionCount stokes_dim_check(const StokesDiagram& d);

/// Is the direction set invariant under rotation by pi/k?
bool rotation_invariant(const StokesDiagram& d);

/// Unipotent, with off-diagonal entries only at root positions of R(d).
bool stokes_factor_supported(const StokesDiagram& d, std::size_t index, const Matrix& s);

/// "angle,roots" lines, one per direction, roots written as i-j (1-based).
std::string plot_data_csv(const StokesDiagram& d);

struct GroupoidPresentation {
  int genus = 0;
  std::vector<std::string> generators;
  std::vector<std::string> relation;  // word in matrix factors, left to right
  std::size_t connecting_paths = 0;
};
GroupoidPresentation groupoid_presentation(int genus, const std::vector<StokesDiagram>& diagrams);

}  // namespace wildhodge
