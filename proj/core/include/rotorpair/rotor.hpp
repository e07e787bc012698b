#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

namespace rotorpair {

inline constexpr int kDefaultMMax = 30;
inline constexpr double kDefaultGuardTolerance = 1e-6;

/// Wraps an angle in radians into [0, 2*pi).
double wrap_angle(double radians);

/// Single planar dipole in a static in-plane electric field. All energies
/// are in units of the rotational constant B; the basis is the free-rotor
/// set exp(i m theta)/sqrt(2 pi) with m = -m_max .. +m_max.
struct RotorParams {
  double omega_over_B = 0.0;  ///< dipole-field coupling strength, >= 0
  double theta_t = 0.0;       ///< field tilt angle [rad], canonical [0, 2pi)
  int m_max = kDefaultMMax;   ///< basis truncation, >= 1

  int dim() const { return 2 * m_max + 1; }
  void validate() const;  // throws std::invalid_argument
};

/// Eigensystem of the single-rotor Hamiltonian, energies ascending.
/// Column l of `coefficients` expands level l over m. Every column has
/// unit norm and its largest-magnitude entry is made real non-negative
/// (magnitude ties resolved toward the smallest m).
struct RotorEigensystem {
  RotorParams params;
  Eigen::VectorXd energies;
  Eigen::MatrixXcd coefficients;

  int levels() const { return static_cast<int>(energies.size()); }

  /// Coefficient of `level` on exp(i m theta)/sqrt(2 pi), physical index m.
  std::complex<double> coeff(int level, int m) const {
    return coefficients(m + params.m_max, level);
  }
};

/// cos(theta) and sin(theta) matrix elements between the two lowest rotor
/// eigenstates: diagonal c0/c1/s0/s1 and cross cx = <psi0|..|psi1>,
/// cxc = <psi1|..|psi0>. Hermiticity ties cxc/sxc to conj(cx)/conj(sx).
struct DipoleFactors {
  std::complex<double> c0, c1, cx, cxc;
  std::complex<double> s0, s1, sx, sxc;

  void validate(double tol = 1e-8) const;  // throws std::invalid_argument
};

/// Dense rotor Hamiltonian: diagonal m^2 plus the dipole-field term
/// -(omega/B) cos(theta - theta_t) on the first off-diagonals,
/// <m|cos(theta-theta_t)|m+1> = exp(+i theta_t)/2.
Eigen::MatrixXcd build_rotor_hamiltonian(const RotorParams& params);

/// Full Hermitian eigendecomposition; throws SolverError on failure.
RotorEigensystem solve_rotor(const RotorParams& params);

/// eps_j - eps_i for i < j; throws std::out_of_range on bad indices.
double level_gap(const RotorEigensystem& sys, int i, int j);

struct GuardResult {
  bool accepted = false;
  double gap = 0.0;        ///< eps2 - eps1
  double threshold = 0.0;  ///< tolerance * max(1, |eps1|)
  std::string reason;      ///< empty when accepted
};

/// Rejects the lowest-two-state truncation when the second excited level is
/// within `tolerance * max(1, |eps1|)` of the first (the field-free
/// degeneracy case).
GuardResult two_level_guard(const RotorEigensystem& sys,
                            double tolerance = kDefaultGuardTolerance);

/// Matrix elements of cos/sin between the two lowest eigenstates.
/// Throws GuardRejection when two_level_guard rejects.
DipoleFactors dipole_factors(const RotorEigensystem& sys,
                             double guard_tolerance = kDefaultGuardTolerance);

/// <psi_a|cos(theta)|psi_b> in the truncated basis, any level pair.
std::complex<double> cos_element(const RotorEigensystem& sys, int a, int b);
/// <psi_a|sin(theta)|psi_b> in the truncated basis, any level pair.
std::complex<double> sin_element(const RotorEigensystem& sys, int a, int b);

/// |psi_level(theta)|^2 from the coefficient expansion.
double probability_density(const RotorEigensystem& sys, int level, double theta);

}  // namespace rotorpair
