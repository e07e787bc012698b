#pragma once

#include <Eigen/Dense>

#include "rotorpair/pair.hpp"

namespace rotorpair {

struct Temperature {
  double kT_over_B = 0.0;  ///< k_B T / B >= 0; 0 means the zero-T limit

  void validate() const;
};

/// 4x4 state over {|00>, |01>, |10>, |11>}: Hermitian, unit trace,
/// positive semidefinite up to round-off.
struct DensityMatrix4 {
  Eigen::Matrix4cd entries = Eigen::Matrix4cd::Zero();
  bool ground_degenerate = false;  ///< zero-T limit hit a degenerate ground level

  void validate() const;  // throws std::invalid_argument
};

/// Boltzmann mixture of the four pair eigenstates. Energies are shifted by
/// the lowest one before exponentiation (the shift cancels in the weights).
/// kT = 0 projects onto the lowest level, an equal mixture when it is
/// exactly degenerate (flagged).
DensityMatrix4 thermal_density_matrix(const PairEigensystem& pair,
                                      Temperature temp);

/// Wootters spin-flip concurrence of a two-qubit density matrix:
/// sqrt-eigenvalues of rho (sy x sy) conj(rho) (sy x sy), descending, then
/// max(0, l1 - l2 - l3 - l4). Throws on a non-physical input.
double wootters_concurrence(const DensityMatrix4& rho);

/// Pure-state shortcut 2 |d2 d3 - d1 d4| for a unit-norm quadruple.
double pure_concurrence(const Eigen::Vector4cd& state);

/// wootters_concurrence(thermal_density_matrix(pair, temp)).
double thermal_concurrence(const PairEigensystem& pair, Temperature temp);

}  // namespace rotorpair
