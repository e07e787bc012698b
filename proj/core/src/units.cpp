#include "rotorpair/units.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rotorpair {

namespace {

// 2019 SI exact values and CODATA 2018 vacuum permittivity
constexpr double kPlanck = 6.62607015e-34;        // J s
constexpr double kSpeedOfLight = 299792458.0;     // m / s
constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F / m

constexpr double kDebye = 1e-21 / kSpeedOfLight;  // C m
constexpr double kHcPerCm = kPlanck * kSpeedOfLight * 100.0;  // J per cm^-1

}  // namespace

void PhysicalParams::validate() const {
  auto ok = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!ok(dipole_moment_debye) || !ok(field_kV_per_cm) || !ok(separation_nm) ||
      !ok(rotational_constant_per_cm))
    throw std::invalid_argument("units: physical parameters must be finite and > 0");
}

ReducedCouplings convert_units(const PhysicalParams& phys) {
  phys.validate();

  const double mu = phys.dipole_moment_debye * kDebye;            // C m
  const double field = phys.field_kV_per_cm * 1e5;                // V / m
  const double r = phys.separation_nm * 1e-9;                     // m
  const double b_joule = phys.rotational_constant_per_cm * kHcPerCm;

  ReducedCouplings out;
  out.omega_over_B = mu * field / b_joule;
  out.coupling_over_B =
      mu * mu / (4.0 * std::numbers::pi * kVacuumPermittivity * r * r * r) /
      b_joule;
  return out;
}

}  // namespace rotorpair
