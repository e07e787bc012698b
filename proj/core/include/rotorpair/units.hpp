#pragma once

namespace rotorpair {

/// Laboratory-unit description of one molecule pair and field.
struct PhysicalParams {
  double dipole_moment_debye = 1.0;
  double field_kV_per_cm = 1.0;
  double separation_nm = 1.0;
  double rotational_constant_per_cm = 1.0;  ///< B in cm^-1

  void validate() const;  // all must be > 0 and finite
};

struct ReducedCouplings {
  double omega_over_B = 0.0;
  double coupling_over_B = 0.0;
};

/// omega/B = mu*E / (h c Btilde), Omega/B = mu^2 / (4 pi eps0 r^3 h c Btilde).
/// CODATA 2018 constants (h and c exact in the 2019 SI).
ReducedCouplings convert_units(const PhysicalParams& phys);

}  // namespace rotorpair
