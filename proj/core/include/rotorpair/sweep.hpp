#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rotorpair/dataset.hpp"
#include "rotorpair/pair.hpp"

namespace rotorpair {

enum class Axis { omega_over_B, coupling_over_B, theta_t_deg, kT_over_B };

enum class Quantity {
  rotor_energies,
  rotor_gap,
  factors,
  pair_energies,
  pure_concurrences,
  thermal_concurrence,
};

std::string to_string(Axis axis);
std::string to_string(Quantity q);
std::optional<Axis> axis_from_string(const std::string& name);
std::optional<Quantity> quantity_from_string(const std::string& name);

double deg_to_rad(double degrees);

/// Everything a grid point needs besides the swept value. Angles are in
/// degrees here (the CLI convention); radians internally.
struct FixedParams {
  double omega_over_B = 2.0;
  double coupling_over_B = 0.8;
  double theta_t_deg = 0.0;
  double kT_over_B = 0.0;
  std::vector<double> temperatures = {0.1, 0.2, 0.5, 1.0};
  int m_max = kDefaultMMax;
  double guard_tolerance = kDefaultGuardTolerance;
  int rotor_levels = 6;  ///< energies emitted by Quantity::rotor_energies
};

struct SweepSpec {
  Axis axis = Axis::omega_over_B;
  double start = 0.0;
  double stop = 1.0;
  int count = 2;
  FixedParams fixed;
  std::vector<Quantity> quantities;
  /// omega/B grids never touch 0: starts below this floor are shifted up.
  double omega_floor = 0.01;

  void validate() const;  // throws std::invalid_argument
};

/// One row per grid point, one column per requested scalar; pair levels are
/// tracked along the sweep so columns follow states through crossings.
/// Guard rejections abort with the offending grid point identified.
Dataset run_sweep(const SweepSpec& spec);

/// Single evaluation (no axis column), same columns as run_sweep.
Dataset evaluate_point(const FixedParams& fixed,
                       const std::vector<Quantity>& quantities);

enum class FeatureKind { crossing, anticrossing, concurrence_minimum };

struct FeatureQuery {
  FeatureKind kind = FeatureKind::crossing;
  int label_i = 0;      ///< tracked level labels (0-based) for energy features
  int label_j = 1;
  int state_label = 0;  ///< tracked state (0-based) for concurrence_minimum
};

struct Feature {
  double axis_value = 0.0;    ///< refined to 1e-4 in axis units
  double feature_value = 0.0; ///< crossing energy, minimal gap, or minimal C
};

/// Coarse 1000-point scan with label tracking, then bisection (crossing)
/// or golden-section (minima) refinement. Throws FeatureNotFound when the
/// scan brackets nothing.
Feature locate_feature(const FeatureQuery& query, const SweepSpec& spec);

struct FigureOptions {
  int points = 500;
  int m_max = kDefaultMMax;
  std::vector<double> temperatures = {0.1, 0.2, 0.5, 1.0};
  double omega_floor = 0.01;
};

struct FigurePanel {
  std::string name;  ///< e.g. "fig4a"
  Dataset data;
};

/// Datasets underlying the standard figures (2..7), one per panel.
std::vector<FigurePanel> figure_datasets(int figure_number,
                                         const FigureOptions& options = {});

}  // namespace rotorpair
