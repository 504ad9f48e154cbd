#pragma once

// Stokes representations: the defining relation, the G x prod H_x action,
// filtrations by Betti weights, degree and stability.

#include <optional>
#include <vector>

#include "wildhodge/rootdata.hpp"
#include "wildhodge/stokes.hpp"

namespace wildhodge {

struct PunctureData {
  /// Absent for a tame puncture (Q = 0): no Stokes factors and H_x = G.
  std::optional<StokesDiagram> diagram;
  Matrix C, h;
  std::vector<Matrix> S;  // S_1 .. S_#A in the cyclic order of the diagram
};

struct StokesRep {
  std::size_t n = 0;
  std::vector<std::pair<Matrix, Matrix>> handles;  // (A_i, B_i)
  std::vector<PunctureData> punctures;

  int genus() const { return static_cast<int>(handles.size()); }
  /// Every A_i, B_i, C_x, h_x and S_{x,j}.
  std::vector<Matrix> generators() const;
  /// h_x block-diagonal for the level sets of Q_x and S_{x,j} supported on R(d_j).
  bool structurally_valid() const;
};

struct FilteredStokesRep {
  StokesRep rep;
  std::vector<Weight> weights;  // gamma_x, one per puncture

  /// h_x in P_{gamma_x}.
  bool filtered() const;
};

/// Is k in H_x (zero off the level-set blocks of Q_x)?
bool in_stabilizer(const PunctureData& x, const Matrix& k);

/// prod [A_i, B_i] prod (C^-1 h S_# ... S_1 C) == I. Throws on size mismatch.
bool check_relation(const StokesRep& rho);

/// g acts on the handles by conjugation; k_x on C_x from the left, g^-1 from the right.
StokesRep group_act(const Matrix& g, const std::vector<Matrix>& k, const StokesRep& rho);

bool is_compatible(const StokesRep& rho, const ParabolicSpec& p);
inline bool is_compatible(const FilteredStokesRep& rho, const ParabolicSpec& p) { return is_compatible(rho.rep, p); }

Rational degree_loc(const FilteredStokesRep& rho, const ParabolicSpec& p, const Character& chi);
bool degree_zero(const FilteredStokesRep& rho);

enum class Stability { kStable, kSemistable, kUnstable };
const char* to_string(Stability s);

struct StabilityWitness {
  ParabolicSpec P;
  Character chi;
  Rational degree;
};

struct StabilityVerdict {
  Stability status = Stability::kStable;
  std::vector<StabilityWitness> witnesses;  // degree <= 0, in parabolic order
  std::size_t compatible_parabolics = 0;
  friend bool operator==(const StabilityVerdict& a, const StabilityVerdict& b);
};

/// Parallel over parabolics with OpenMP; the merge order is the enumeration order.
StabilityVerdict check_stability(const FilteredStokesRep& rho);
StabilityVerdict check_stability_serial(const FilteredStokesRep& rho);

/// Genus 0, one puncture with Q = diag(1,-1) z^-2: S_1 = I + x E21,
/// S_2 = I + a E12, S_3 = I + b E21, S_4 = I + c E12 with b, c and the
/// diagonal h solved so that the relation holds. Needs 1 + ax != 0 and
/// 1 + ab != 0.
StokesRep genus0_gl2_solution(const Rational& x, const Rational& a);

}  // namespace wildhodge
