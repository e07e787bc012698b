#pragma once

#include <array>

#include <Eigen/Dense>

#include "rotorpair/rotor.hpp"

namespace rotorpair {

/// Field parallel (theta_t = 0) or perpendicular (theta_t = 90 deg) to the
/// intermolecular axis. Only at these angles does the 4x4 reduce to the
/// closed-form Bell-like block structure.
enum class AngleCase { parallel, perpendicular };

/// Reduced couplings of the block-diagonal 4x4 at a special angle:
/// parallel       a = -2W c0^2, b = -2W c0 c1, c = -2W c1^2,
///                d = W sx^2,   f = W |sx|^2
/// perpendicular  a =  W s0^2,  b =  W s0 s1,  c =  W s1^2,
///                d = -2W cx^2, f = -2W |cx|^2       (W = Omega/B)
struct ReducedParams {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0, f = 0.0;
  double eps0 = 0.0, eps1 = 0.0;
  AngleCase angle_case = AngleCase::parallel;
};

/// Bell-like eigenstates and their energies in label order 1..4.
/// Psi1/Psi4 live on the {|00>, |11>} block; Psi2/Psi3 are
/// (|01> -+ |10>)/sqrt(2), which of the two carries which label depends on
/// the angle case.
struct BellLikeSolution {
  std::array<double, 4> energies{};            ///< E1..E4 (label order)
  std::array<Eigen::Vector4cd, 4> states{};    ///< Psi1..Psi4
  double delta = 0.0;                          ///< eps1 - eps0 + (c - a)/2
  double n_plus = 0.0, n_minus = 0.0;          ///< d^2 + delta^2 +- delta sqrt(..)
  double concurrence_14 = 0.0;                 ///< shared C of Psi1 and Psi4
  bool degenerate_block = false;               ///< d = 0 and delta = 0
  bool product_limit = false;                  ///< d = 0: {|00>,|11>} block diagonal
};

/// Builds the reduced couplings from factors computed at the matching tilt
/// angle. Rejects factors whose must-vanish elements exceed `vanish_tol`
/// (the caller passed a generic-angle eigensystem).
ReducedParams reduce(const DipoleFactors& factors, double eps0, double eps1,
                     double coupling_over_B, AngleCase angle_case,
                     double vanish_tol = 1e-8);

/// Closed-form eigensystem of the reduced matrix.
BellLikeSolution bell_solution(const ReducedParams& params);

/// Shared concurrence of Psi1/Psi4: 1/sqrt(1 + delta^2/d^2); 0 when d = 0
/// (product-state limit).
double analytic_concurrence_14(const ReducedParams& params);

}  // namespace rotorpair
