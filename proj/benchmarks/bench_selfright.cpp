#include <numbers>

#include <benchmark/benchmark.h>

#include "selfright/gait.hpp"
#include "selfright/kinematics.hpp"
#include "selfright/rollmodel.hpp"
#include "selfright/sidewinding.hpp"
#include "selfright/sweep.hpp"

namespace {

using namespace selfright;
constexpr double kPi = std::numbers::pi;

void BM_JointVector(benchmark::State& state) {
  const auto p = GaitParams::uniform(kPi / 4, 0.6);
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(joint_vector(p, t));
    t += 1e-3;
  }
}
BENCHMARK(BM_JointVector);

void BM_ForwardKinematics(benchmark::State& state) {
  const Morphology m;
  const auto q = joint_vector(GaitParams::uniform(kPi / 4, 0.6), 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(forward_kinematics(m, q));
}
BENCHMARK(BM_ForwardKinematics);

void BM_EnergyLandscape(benchmark::State& state) {
  const Morphology m;
  for (auto _ : state) {
    benchmark::DoNotOptimize(energy_landscape(m, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_EnergyLandscape)->Arg(1024)->Arg(4096);

void BM_SimulateRoll(benchmark::State& state) {
  const Morphology m;
  const auto land = energy_landscape(m);
  SimulationOptions o;
  o.cycles = 3;
  o.mode = state.range(0) ? RollMode::kSegmented : RollMode::kLumped;
  const auto p = GaitParams::uniform(kPi / 4, 0.6);
  for (auto _ : state) benchmark::DoNotOptimize(simulate_roll(p, m, land, o));
}
BENCHMARK(BM_SimulateRoll)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_LateralDisplacement(benchmark::State& state) {
  GaitParams p;
  p.amplitude_lateral = kPi / 3;
  p.amplitude_vertical = kPi / 9;
  p.spatial_frequency = 0.6;
  for (auto _ : state) benchmark::DoNotOptimize(lateral_displacement(p, Morphology{}, 1));
}
BENCHMARK(BM_LateralDisplacement)->Unit(benchmark::kMillisecond);

void BM_DefaultSweep(benchmark::State& state) {
  SweepSpec s;
  s.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(s));
}
BENCHMARK(BM_DefaultSweep)->Arg(1)->Arg(0)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
