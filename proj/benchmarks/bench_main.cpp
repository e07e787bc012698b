#include <benchmark/benchmark.h>

#include <numbers>

#include "rotorpair/entanglement.hpp"
#include "rotorpair/pair.hpp"
#include "rotorpair/rotor.hpp"
#include "rotorpair/sweep.hpp"

using namespace rotorpair;

namespace {

RotorParams rotor_at(double omega, double theta, int m_max) {
  RotorParams p;
  p.omega_over_B = omega;
  p.theta_t = theta;
  p.m_max = m_max;
  return p;
}

void BM_solve_rotor(benchmark::State& state) {
  const RotorParams p = rotor_at(2.0, 0.4, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_rotor(p));
  }
}

void BM_pair_pipeline(benchmark::State& state) {
  PairParams p;
  p.rotor = rotor_at(2.0, std::numbers::pi / 2, 30);
  p.coupling_over_B = 0.8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_pair(p));
  }
}

void BM_pair_from_solved_rotor(benchmark::State& state) {
  const RotorEigensystem rotor = solve_rotor(rotor_at(2.0, 0.0, 30));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_pair(rotor, 0.8));
  }
}

void BM_thermal_concurrence(benchmark::State& state) {
  const PairEigensystem sys = [] {
    PairParams p;
    p.rotor = rotor_at(2.0, 0.0, 30);
    p.coupling_over_B = 0.8;
    return solve_pair(p);
  }();
  for (auto _ : state) {
    benchmark::DoNotOptimize(thermal_concurrence(sys, Temperature{0.3}));
  }
}

void BM_run_sweep(benchmark::State& state) {
  SweepSpec s;
  s.axis = Axis::omega_over_B;
  s.start = 0.01;
  s.stop = 4.0;
  s.count = static_cast<int>(state.range(0));
  s.fixed.theta_t_deg = 90.0;
  s.fixed.coupling_over_B = 0.8;
  s.quantities = {Quantity::pair_energies, Quantity::pure_concurrences};
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_sweep(s));
  }
}

BENCHMARK(BM_solve_rotor)->Arg(30)->Arg(60);
BENCHMARK(BM_pair_pipeline);
BENCHMARK(BM_pair_from_solved_rotor);
BENCHMARK(BM_thermal_concurrence);
BENCHMARK(BM_run_sweep)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
