#include "rotorpair/rotor.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "rotorpair/errors.hpp"

namespace rotorpair {

namespace {

// Largest-magnitude entry made real non-negative; strict > keeps the
// smallest m on magnitude ties.
void fix_gauge(Eigen::Ref<Eigen::VectorXcd> v) {
  int best = 0;
  double best_mag = -1.0;
  for (int i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > best_mag) {
      best_mag = mag;
      best = i;
    }
  }
  const std::complex<double> z = v(best);
  if (best_mag > 0.0) v *= std::conj(z) / best_mag;
}

}  // namespace

double wrap_angle(double radians) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::fmod(radians, two_pi);
  if (a < 0.0) a += two_pi;
  return a;
}

void RotorParams::validate() const {
  if (m_max < 1)
    throw std::invalid_argument("rotor: m_max must be >= 1");
  if (!std::isfinite(omega_over_B) || omega_over_B < 0.0)
    throw std::invalid_argument("rotor: omega_over_B must be finite and >= 0");
  if (!std::isfinite(theta_t))
    throw std::invalid_argument("rotor: theta_t must be finite");
}

Eigen::MatrixXcd build_rotor_hamiltonian(const RotorParams& params) {
  params.validate();
  const int n = params.dim();
  const double theta_t = wrap_angle(params.theta_t);

  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double m = static_cast<double>(i - params.m_max);
    h(i, i) = m * m;
  }
  // <m|cos(theta - theta_t)|m+1> = exp(+i theta_t)/2
  const std::complex<double> upper =
      -0.5 * params.omega_over_B *
      std::exp(std::complex<double>(0.0, theta_t));
  for (int i = 0; i + 1 < n; ++i) {
    h(i, i + 1) = upper;
    h(i + 1, i) = std::conj(upper);
  }
  return h;
}

RotorEigensystem solve_rotor(const RotorParams& params) {
  params.validate();
  const int n = params.dim();
  const double theta_t = wrap_angle(params.theta_t);

  // The tilt only rotates the basis phases: H(theta_t) = U H(0) U* with
  // U = diag(exp(-i m theta_t)). Solving the real symmetric aligned matrix
  // and rotating the eigenvectors keeps the spectrum exactly tilt-independent.
  Eigen::MatrixXd aligned = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double m = static_cast<double>(i - params.m_max);
    aligned(i, i) = m * m;
  }
  for (int i = 0; i + 1 < n; ++i) {
    aligned(i, i + 1) = -0.5 * params.omega_over_B;
    aligned(i + 1, i) = -0.5 * params.omega_over_B;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(aligned);
  if (solver.info() != Eigen::Success)
    throw SolverError("rotor: Hermitian eigendecomposition failed");

  RotorEigensystem sys;
  sys.params = params;
  sys.params.theta_t = theta_t;
  sys.energies = solver.eigenvalues();
  sys.coefficients = solver.eigenvectors().cast<std::complex<double>>();
  if (theta_t != 0.0) {
    for (int i = 0; i < n; ++i) {
      const double m = static_cast<double>(i - params.m_max);
      sys.coefficients.row(i) *=
          std::exp(std::complex<double>(0.0, -m * theta_t));
    }
  }
  for (int l = 0; l < sys.coefficients.cols(); ++l) {
    sys.coefficients.col(l).normalize();
    fix_gauge(sys.coefficients.col(l));
  }
  return sys;
}

double level_gap(const RotorEigensystem& sys, int i, int j) {
  if (i < 0 || j <= i || j >= sys.levels())
    throw std::out_of_range("rotor: level_gap needs 0 <= i < j < levels");
  return sys.energies(j) - sys.energies(i);
}

GuardResult two_level_guard(const RotorEigensystem& sys, double tolerance) {
  if (sys.levels() < 3)
    throw std::invalid_argument("rotor: guard needs at least 3 levels");

  GuardResult result;
  result.gap = sys.energies(2) - sys.energies(1);
  result.threshold = tolerance * std::max(1.0, std::abs(sys.energies(1)));
  result.accepted = result.gap >= result.threshold;
  if (!result.accepted) {
    std::ostringstream os;
    os << "two-level truncation invalid: eps2 - eps1 = " << result.gap
       << " < " << result.threshold
       << " (first excited level is quasi-degenerate with the second)";
    result.reason = os.str();
  }
  return result;
}

namespace {

// <psi_a| f |psi_b> with f acting as b_m -> (b_{m-1} + b_{m+1})/2  (cos)
// or b_m -> (b_{m-1} - b_{m+1})/(2i)                               (sin).
std::complex<double> angular_element(const Eigen::MatrixXcd& c, int a, int b,
                                     bool sine) {
  const int dim = static_cast<int>(c.rows());
  std::complex<double> acc = 0.0;
  for (int i = 0; i < dim; ++i) {
    const std::complex<double> below = (i - 1 >= 0) ? c(i - 1, b) : 0.0;
    const std::complex<double> above = (i + 1 < dim) ? c(i + 1, b) : 0.0;
    if (sine)
      acc += std::conj(c(i, a)) * (below - above) * std::complex<double>(0.0, -0.5);
    else
      acc += std::conj(c(i, a)) * (below + above) * 0.5;
  }
  return acc;
}

}  // namespace

std::complex<double> cos_element(const RotorEigensystem& sys, int a, int b) {
  return angular_element(sys.coefficients, a, b, false);
}

std::complex<double> sin_element(const RotorEigensystem& sys, int a, int b) {
  return angular_element(sys.coefficients, a, b, true);
}

DipoleFactors dipole_factors(const RotorEigensystem& sys,
                             double guard_tolerance) {
  if (sys.levels() < 2)
    throw std::invalid_argument("rotor: dipole_factors needs >= 2 levels");
  const GuardResult guard = two_level_guard(sys, guard_tolerance);
  if (!guard.accepted)
    throw GuardRejection(guard.reason, guard.gap, guard.threshold);

  DipoleFactors f;
  f.c0 = cos_element(sys, 0, 0);
  f.c1 = cos_element(sys, 1, 1);
  f.cx = cos_element(sys, 0, 1);
  f.cxc = cos_element(sys, 1, 0);
  f.s0 = sin_element(sys, 0, 0);
  f.s1 = sin_element(sys, 1, 1);
  f.sx = sin_element(sys, 0, 1);
  f.sxc = sin_element(sys, 1, 0);
  return f;
}

void DipoleFactors::validate(double tol) const {
  auto finite = [](std::complex<double> z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  };
  for (auto z : {c0, c1, cx, cxc, s0, s1, sx, sxc})
    if (!finite(z))
      throw std::invalid_argument("factors: non-finite entry");

  // cos/sin are Hermitian observables: real diagonals, conjugate cross pairs
  if (std::abs(c0.imag()) > tol || std::abs(c1.imag()) > tol ||
      std::abs(s0.imag()) > tol || std::abs(s1.imag()) > tol)
    throw std::invalid_argument("factors: diagonal element not real");
  if (std::abs(cxc - std::conj(cx)) > tol ||
      std::abs(sxc - std::conj(sx)) > tol)
    throw std::invalid_argument("factors: cross elements not conjugate");

  for (auto z : {c0, c1, cx, s0, s1, sx})
    if (std::abs(z) > 1.0 + tol)
      throw std::invalid_argument("factors: magnitude exceeds 1");
}

double probability_density(const RotorEigensystem& sys, int level,
                           double theta) {
  if (level < 0 || level >= sys.levels())
    throw std::out_of_range("rotor: level out of range");
  std::complex<double> psi = 0.0;
  for (int m = -sys.params.m_max; m <= sys.params.m_max; ++m)
    psi += sys.coeff(level, m) * std::exp(std::complex<double>(0.0, m * theta));
  return std::norm(psi) / (2.0 * std::numbers::pi);
}

}  // namespace rotorpair
