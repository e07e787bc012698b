#include "rotorpair/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace rotorpair {

namespace {

double real_part(std::complex<double> z, double tol, const char* what) {
  if (std::abs(z.imag()) > tol)
    throw std::invalid_argument(std::string("analytic: ") + what +
                                " has a non-negligible imaginary part");
  return z.real();
}

}  // namespace

ReducedParams reduce(const DipoleFactors& factors, double eps0, double eps1,
                     double coupling_over_B, AngleCase angle_case,
                     double vanish_tol) {
  factors.validate();
  if (!std::isfinite(eps0) || !std::isfinite(eps1) ||
      !std::isfinite(coupling_over_B) || coupling_over_B < 0.0)
    throw std::invalid_argument("analytic: bad scalar input");

  ReducedParams p;
  p.eps0 = eps0;
  p.eps1 = eps1;
  p.angle_case = angle_case;
  const double w = coupling_over_B;

  if (angle_case == AngleCase::parallel) {
    if (std::abs(factors.s0) > vanish_tol || std::abs(factors.s1) > vanish_tol ||
        std::abs(factors.cx) > vanish_tol)
      throw std::invalid_argument(
          "analytic: factors are not those of a parallel-field eigensystem");
    const double c0 = real_part(factors.c0, vanish_tol, "c0");
    const double c1 = real_part(factors.c1, vanish_tol, "c1");
    p.a = -2.0 * w * c0 * c0;
    p.b = -2.0 * w * c0 * c1;
    p.c = -2.0 * w * c1 * c1;
    p.d = w * real_part(factors.sx * factors.sx, vanish_tol, "sx^2");
    p.f = w * std::norm(factors.sx);
  } else {
    if (std::abs(factors.c0) > vanish_tol || std::abs(factors.c1) > vanish_tol ||
        std::abs(factors.sx) > vanish_tol)
      throw std::invalid_argument(
          "analytic: factors are not those of a perpendicular-field eigensystem");
    const double s0 = real_part(factors.s0, vanish_tol, "s0");
    const double s1 = real_part(factors.s1, vanish_tol, "s1");
    p.a = w * s0 * s0;
    p.b = w * s0 * s1;
    p.c = w * s1 * s1;
    p.d = -2.0 * w * real_part(factors.cx * factors.cx, vanish_tol, "cx^2");
    p.f = -2.0 * w * std::norm(factors.cx);
  }
  return p;
}

BellLikeSolution bell_solution(const ReducedParams& p) {
  BellLikeSolution sol;
  const double delta = p.eps1 - p.eps0 + 0.5 * (p.c - p.a);
  const double d = p.d;
  const double s = std::hypot(d, delta);
  const double s2 = d * d + delta * delta;
  sol.delta = delta;

  // N+- = s^2 +- delta*s; the smaller one via N+ N- = s^2 d^2 to avoid
  // cancellation when |d| << |delta|
  if (delta >= 0.0) {
    sol.n_plus = s2 + delta * s;
    sol.n_minus = (d == 0.0) ? 0.0 : d * d * s2 / sol.n_plus;
  } else {
    sol.n_minus = s2 - delta * s;
    sol.n_plus = (d == 0.0) ? 0.0 : d * d * s2 / sol.n_minus;
  }

  const double mid = p.eps0 + p.eps1;
  sol.energies[0] = mid + 0.5 * (p.a + p.c) - s;
  sol.energies[3] = mid + 0.5 * (p.a + p.c) + s;

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Eigen::Vector4cd minus = Eigen::Vector4cd::Zero();
  minus(1) = inv_sqrt2;
  minus(2) = -inv_sqrt2;
  Eigen::Vector4cd plus = Eigen::Vector4cd::Zero();
  plus(1) = inv_sqrt2;
  plus(2) = inv_sqrt2;

  // the singlet-like state carries b - f in the parallel case and b + f in
  // the perpendicular one; the middle labels swap accordingly
  if (p.angle_case == AngleCase::parallel) {
    sol.states[1] = minus;
    sol.energies[1] = mid + p.b - p.f;
    sol.states[2] = plus;
    sol.energies[2] = mid + p.b + p.f;
  } else {
    sol.states[1] = plus;
    sol.energies[1] = mid + p.b + p.f;
    sol.states[2] = minus;
    sol.energies[2] = mid + p.b - p.f;
  }

  Eigen::Vector4cd psi1 = Eigen::Vector4cd::Zero();
  Eigen::Vector4cd psi4 = Eigen::Vector4cd::Zero();
  if (d == 0.0) {
    sol.product_limit = true;
    sol.degenerate_block = (delta == 0.0);
    // {|00>, |11>} block is diagonal; assign by level order
    if (delta >= 0.0) {
      psi1(0) = 1.0;
      psi4(3) = 1.0;
    } else {
      psi1(3) = 1.0;
      psi4(0) = 1.0;
    }
  } else {
    // alpha numerators delta + s and delta - s, the cancelling one rewritten
    double num_p, num_m;
    if (delta >= 0.0) {
      num_p = delta + s;
      num_m = -d * d / (s + delta);
    } else {
      num_p = d * d / (s - delta);
      num_m = delta - s;
    }
    const double inv_p = 1.0 / std::sqrt(2.0 * sol.n_plus);
    const double inv_m = 1.0 / std::sqrt(2.0 * sol.n_minus);
    psi1(0) = num_p * inv_p;
    psi1(3) = -d * inv_p;
    psi4(0) = num_m * inv_m;
    psi4(3) = -d * inv_m;
  }
  sol.states[0] = psi1;
  sol.states[3] = psi4;

  sol.concurrence_14 = (d == 0.0) ? 0.0 : std::abs(d) / s;
  return sol;
}

double analytic_concurrence_14(const ReducedParams& p) {
  const double delta = p.eps1 - p.eps0 + 0.5 * (p.c - p.a);
  if (p.d == 0.0) return 0.0;  // product-state limit
  return std::abs(p.d) / std::hypot(p.d, delta);
}

}  // namespace rotorpair
