#include "rotorpair/pair.hpp"

#include <cmath>
#include <stdexcept>

#include "rotorpair/errors.hpp"

namespace rotorpair {

void PairParams::validate() const {
  rotor.validate();
  if (!std::isfinite(coupling_over_B) || coupling_over_B < 0.0)
    throw std::invalid_argument("pair: coupling_over_B must be finite and >= 0");
}

int PairEigensystem::index_of_label(int label) const {
  for (int j = 0; j < 4; ++j)
    if (labels[j] == label) return j;
  throw std::out_of_range("pair: unknown level label");
}

Eigen::Matrix4cd build_pair_hamiltonian(const DipoleFactors& factors,
                                        double eps0, double eps1,
                                        double coupling_over_B) {
  if (!std::isfinite(eps0) || !std::isfinite(eps1) ||
      !std::isfinite(coupling_over_B))
    throw std::invalid_argument("pair: non-finite input");
  factors.validate();

  using C = std::complex<double>;
  // index order 0, 1, X, XC
  const C cs[4] = {factors.c0, factors.c1, factors.cx, factors.cxc};
  const C ss[4] = {factors.s0, factors.s1, factors.sx, factors.sxc};
  auto gamma = [&](int alpha, int beta) -> C {
    return coupling_over_B *
           (ss[alpha] * ss[beta] - 2.0 * cs[alpha] * cs[beta]);
  };
  constexpr int k0 = 0, k1 = 1, kX = 2, kXC = 3;

  Eigen::Matrix4cd h;
  h(0, 0) = 2.0 * eps0 + gamma(k0, k0);
  h(0, 1) = gamma(k0, kX);
  h(0, 2) = gamma(k0, kX);
  h(0, 3) = gamma(kX, kX);
  h(1, 1) = eps0 + eps1 + gamma(k0, k1);
  h(1, 2) = gamma(kX, kXC);
  h(1, 3) = gamma(k1, kX);
  h(2, 2) = eps0 + eps1 + gamma(k0, k1);
  h(2, 3) = gamma(k1, kX);
  h(3, 3) = 2.0 * eps1 + gamma(k1, k1);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < i; ++j) h(i, j) = std::conj(h(j, i));

  const double scale = h.cwiseAbs().maxCoeff();
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, scale))
    throw std::invalid_argument("pair: assembled matrix is not Hermitian");
  return h;
}

namespace {

void fix_gauge4(Eigen::Ref<Eigen::Vector4cd> v) {
  int best = 0;
  double best_mag = -1.0;
  for (int i = 0; i < 4; ++i) {
    const double mag = std::abs(v(i));
    if (mag > best_mag) {
      best_mag = mag;
      best = i;
    }
  }
  if (best_mag > 0.0) v *= std::conj(v(best)) / best_mag;
}

}  // namespace

PairEigensystem solve_pair(const PairParams& params, double guard_tolerance) {
  params.validate();
  return solve_pair(solve_rotor(params.rotor), params.coupling_over_B,
                    guard_tolerance);
}

PairEigensystem solve_pair(const RotorEigensystem& rotor,
                           double coupling_over_B, double guard_tolerance) {
  PairParams params;
  params.rotor = rotor.params;
  params.coupling_over_B = coupling_over_B;
  params.validate();

  const DipoleFactors factors = dipole_factors(rotor, guard_tolerance);
  const Eigen::Matrix4cd h = build_pair_hamiltonian(
      factors, rotor.energies(0), rotor.energies(1), params.coupling_over_B);

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(h);
  if (solver.info() != Eigen::Success)
    throw SolverError("pair: 4x4 eigendecomposition failed");

  PairEigensystem sys;
  sys.params = params;
  sys.energies = solver.eigenvalues();
  sys.states = solver.eigenvectors();
  for (int n = 0; n < 4; ++n) {
    sys.states.col(n).normalize();
    fix_gauge4(sys.states.col(n));
  }
  const double scale = std::max(1.0, sys.energies.cwiseAbs().maxCoeff());
  for (int n = 0; n + 1 < 4; ++n)
    if (sys.energies(n + 1) - sys.energies(n) <= kDegeneracyTolerance * scale)
      sys.degenerate = true;
  return sys;
}

LabelMatch track_labels(const PairEigensystem& previous,
                        const PairEigensystem& current) {
  Eigen::Matrix4d overlap;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      overlap(i, j) = std::abs(previous.states.col(i).dot(current.states.col(j)));

  LabelMatch match;
  match.min_margin = 1.0;
  // per-state margin between its best and second-best previous partner
  for (int j = 0; j < 4; ++j) {
    double first = -1.0, second = -1.0;
    for (int i = 0; i < 4; ++i) {
      if (overlap(i, j) > first) {
        second = first;
        first = overlap(i, j);
      } else if (overlap(i, j) > second) {
        second = overlap(i, j);
      }
    }
    match.min_margin = std::min(match.min_margin, first - second);
  }
  match.ambiguous = match.min_margin < kTrackAmbiguityMargin;

  bool used_prev[4] = {false, false, false, false};
  bool used_cur[4] = {false, false, false, false};
  match.labels = {-1, -1, -1, -1};
  for (int step = 0; step < 4; ++step) {
    double best = -1.0;
    int bi = -1, bj = -1;
    for (int i = 0; i < 4; ++i) {
      if (used_prev[i]) continue;
      for (int j = 0; j < 4; ++j) {
        if (used_cur[j]) continue;
        if (overlap(i, j) > best) {
          best = overlap(i, j);
          bi = i;
          bj = j;
        }
      }
    }
    used_prev[bi] = true;
    used_cur[bj] = true;
    match.labels[bj] = previous.labels[bi];
  }
  return match;
}

}  // namespace rotorpair
