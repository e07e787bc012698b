#pragma once

#include <array>

#include <Eigen/Dense>

#include "rotorpair/rotor.hpp"

namespace rotorpair {

/// Relative spacing below which two pair levels count as exactly degenerate.
inline constexpr double kDegeneracyTolerance = 1e-12;
/// Overlap margin below which label tracking is flagged ambiguous.
inline constexpr double kTrackAmbiguityMargin = 1e-6;

/// Two identical planar dipoles sharing one field, coupled by the
/// point-dipole interaction of strength Omega/B across the x axis.
struct PairParams {
  RotorParams rotor;
  double coupling_over_B = 0.0;  ///< Omega/B >= 0

  void validate() const;
};

/// Eigensystem of the 4x4 two-molecule Hamiltonian over the product basis
/// {|00>, |01>, |10>, |11>} built from each molecule's two lowest states.
/// Energies ascending; column n of `states` is the n-th eigenvector,
/// gauge-fixed like rotor eigenvectors. labels[j] is the tracked label of
/// sorted state j (identity until a sweep re-labels across crossings).
struct PairEigensystem {
  PairParams params;
  Eigen::Vector4d energies;
  Eigen::Matrix4cd states;
  std::array<int, 4> labels{0, 1, 2, 3};
  bool degenerate = false;  ///< some adjacent spacing below kDegeneracyTolerance

  /// Sorted index currently carrying `label`.
  int index_of_label(int label) const;
};

/// The 4x4 Hamiltonian: diagonal eps_a + eps_b plus the dipole-dipole
/// couplings Omega (S_a S_b - 2 C_a C_b) assembled from the factors.
/// Throws std::invalid_argument on non-finite input or factor-invariant
/// violations; the result is checked Hermitian.
Eigen::Matrix4cd build_pair_hamiltonian(const DipoleFactors& factors,
                                        double eps0, double eps1,
                                        double coupling_over_B);

/// Full pipeline: rotor solve, two-level guard, factors, 4x4 solve.
/// Throws GuardRejection when the truncation is invalid.
PairEigensystem solve_pair(const PairParams& params,
                           double guard_tolerance = kDefaultGuardTolerance);

/// Same, reusing an already-solved rotor eigensystem.
PairEigensystem solve_pair(const RotorEigensystem& rotor,
                           double coupling_over_B,
                           double guard_tolerance = kDefaultGuardTolerance);

struct LabelMatch {
  std::array<int, 4> labels;   ///< labels[j] = tracked label of current state j
  bool ambiguous = false;      ///< best-vs-second overlap margin < kTrackAmbiguityMargin
  double min_margin = 0.0;
};

/// Assigns each current state the label of the previous state with maximal
/// overlap magnitude (greedy perfect matching, deterministic tie-break).
LabelMatch track_labels(const PairEigensystem& previous,
                        const PairEigensystem& current);

}  // namespace rotorpair
