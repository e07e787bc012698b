#include "rotorpair/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rotorpair/errors.hpp"

namespace rotorpair {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = -1e-10;
constexpr double kImagTol = 1e-8;

// sigma_y (x) sigma_y over {|00>, |01>, |10>, |11>}: antidiagonal -1, 1, 1, -1
Eigen::Matrix4cd spin_flip_matrix() {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 3) = -1.0;
  m(1, 2) = 1.0;
  m(2, 1) = 1.0;
  m(3, 0) = -1.0;
  return m;
}

}  // namespace

void Temperature::validate() const {
  if (!std::isfinite(kT_over_B) || kT_over_B < 0.0)
    throw std::invalid_argument("temperature: kT_over_B must be finite and >= 0");
}

void DensityMatrix4::validate() const {
  if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
    throw std::invalid_argument("density matrix: not Hermitian");
  if (std::abs(entries.trace() - std::complex<double>(1.0)) > kTraceTol)
    throw std::invalid_argument("density matrix: trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(entries);
  if (solver.info() != Eigen::Success)
    throw SolverError("density matrix: eigendecomposition failed");
  if (solver.eigenvalues().minCoeff() < kPsdTol)
    throw std::invalid_argument("density matrix: not positive semidefinite");
}

DensityMatrix4 thermal_density_matrix(const PairEigensystem& pair,
                                      Temperature temp) {
  temp.validate();

  const Eigen::Vector4d shifted =
      pair.energies.array() - pair.energies(0);  // shift cancels in the weights
  const double scale = std::max(1.0, std::abs(pair.energies(0)));

  Eigen::Vector4d w;
  bool degenerate_ground = false;
  if (temp.kT_over_B == 0.0) {
    for (int n = 0; n < 4; ++n)
      w(n) = (shifted(n) <= kDegeneracyTolerance * scale) ? 1.0 : 0.0;
    degenerate_ground = w.sum() > 1.0;
  } else {
    w = (-shifted.array() / temp.kT_over_B).exp();
  }
  w /= w.sum();

  DensityMatrix4 rho;
  rho.ground_degenerate = degenerate_ground;
  for (int n = 0; n < 4; ++n)
    rho.entries += w(n) * pair.states.col(n) * pair.states.col(n).adjoint();
  rho.validate();
  return rho;
}

double wootters_concurrence(const DensityMatrix4& rho) {
  rho.validate();

  static const Eigen::Matrix4cd sysy = spin_flip_matrix();
  const Eigen::Matrix4cd rho_tilde =
      rho.entries * sysy * rho.entries.conjugate() * sysy;

  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(rho_tilde, false);
  if (solver.info() != Eigen::Success)
    throw SolverError("concurrence: spin-flip eigendecomposition failed");

  // the product matrix carries O(eps) round-off whose square roots would
  // pollute the concurrence at the 1e-8 level; eigenvalues at that floor
  // are zeros of the exact problem
  const double floor =
      1e-14 * std::max(1.0, rho_tilde.cwiseAbs().maxCoeff());
  std::array<double, 4> roots{};
  for (int k = 0; k < 4; ++k) {
    const std::complex<double> lambda = solver.eigenvalues()(k);
    if (std::abs(lambda.imag()) >= kImagTol)
      throw std::invalid_argument(
          "concurrence: spin-flip eigenvalue has a non-negligible imaginary part");
    roots[k] = lambda.real() <= floor ? 0.0 : std::sqrt(lambda.real());
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

double pure_concurrence(const Eigen::Vector4cd& state) {
  if (std::abs(state.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("concurrence: state is not unit-norm");
  return 2.0 * std::abs(state(1) * state(2) - state(0) * state(3));
}

double thermal_concurrence(const PairEigensystem& pair, Temperature temp) {
  return wootters_concurrence(thermal_density_matrix(pair, temp));
}

}  // namespace rotorpair
