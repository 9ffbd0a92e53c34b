#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "selfright/errors.hpp"
#include "selfright/rollmodel.hpp"
#include "support/brute_force_energy.hpp"

namespace {

using namespace selfright;
constexpr double kPi = std::numbers::pi;

Morphology limbless() {
  Morphology m;
  m.leg_length = 0.0;
  return m;
}

SimulationOptions half_cycle() {
  SimulationOptions o;
  o.half_cycle = true;
  return o;
}

SimulationOptions cycles(int n, RollMode mode = RollMode::kLumped) {
  SimulationOptions o;
  o.cycles = n;
  o.mode = mode;
  return o;
}

double body_delta(const RollTrajectory& t) { return t.total_delta_gamma(); }

TEST(EnergyLandscape, LimblessIsFlat) {
  const auto land = energy_landscape(limbless());
  ASSERT_EQ(land.resolution(), 1024u);
  const auto [lo, hi] = std::minmax_element(land.energy.begin(), land.energy.end());
  EXPECT_LE(*hi - *lo, 1e-6 * *hi);
  EXPECT_LE(land.barrier, 1e-6);
  EXPECT_TRUE(land.minima.empty());
  EXPECT_TRUE(stable_configurations(land).empty());
}

TEST(EnergyLandscape, LeggedHasTwoMinima) {
  const auto land = energy_landscape(Morphology{});
  ASSERT_EQ(land.minima.size(), 2u);
  EXPECT_NEAR(land.minima[0], 0.0, land.step());
  EXPECT_NEAR(land.minima[1], kPi, land.step());
  // tests/oracles/reference_values.py: M m g L.
  EXPECT_NEAR(land.barrier, 1.0791, 1e-12);
  EXPECT_NEAR(land.max_slope(), 1.3414973238884973639, 0.01);
}

TEST(EnergyLandscape, AgreesWithBruteForceOracle) {
  for (double L : {0.01, 0.05, 0.11}) {
    Morphology m;
    m.leg_length = L;
    const auto oracle = oracle::brute_force_energy(m, 1024);
    const auto land = energy_landscape(m, 1024);
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      // The oracle's polygon sits below the exact disc by r(1 - cos(pi/4096)).
      ASSERT_NEAR(land.energy[i], oracle[i], 1e-7) << "L=" << L << " i=" << i;
    }
  }
}

TEST(EnergyLandscape, BarrierIncreasesWithLegLength) {
  double previous = -1.0;
  for (double L : {0.0, 0.01, 0.03, 0.05, 0.07, 0.11}) {
    Morphology m;
    m.leg_length = L;
    const double barrier = energy_landscape(m).barrier;
    EXPECT_GE(barrier, previous) << "L=" << L;
    previous = barrier;
  }
}

TEST(EnergyLandscape, RejectsBadInput) {
  EXPECT_THROW(energy_landscape(Morphology{}, 63), std::invalid_argument);
  Morphology point;
  point.body_radius = 0.0;
  point.leg_length = 0.0;
  EXPECT_THROW(energy_landscape(point), GeometryError);
}

TEST(EnergyLandscape, InterpolationAndSlope) {
  const auto land = energy_landscape(Morphology{});
  for (std::size_t i = 0; i < land.resolution(); i += 37) {
    EXPECT_DOUBLE_EQ(land.energy_at(land.gamma[i]), land.energy[i]);
    EXPECT_NEAR(land.energy_at(land.gamma[i] + 2 * kPi), land.energy[i], 1e-12);
  }
  // Flat around the resting poses, uphill just past the plateau edge.
  EXPECT_EQ(land.slope_at(kPi + 0.05), 0.0);
  EXPECT_GT(land.slope_at(kPi + 0.3), 0.0);
  EXPECT_LT(land.slope_at(kPi - 0.3), 0.0);
}

TEST(StableConfigurations, SyntheticCosine) {
  std::vector<double> u(720);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::cos(2 * 2 * kPi * i / u.size());
  const auto land = landscape_from_samples(u);
  const auto minima = stable_configurations(land);
  ASSERT_EQ(minima.size(), 2u);
  EXPECT_NEAR(minima[0], kPi / 2, land.step());
  EXPECT_NEAR(minima[1], 3 * kPi / 2, land.step());
}

TEST(StableConfigurations, PlateauReportsItsMidpoint) {
  std::vector<double> u(100, 1.0);
  for (int i = 40; i <= 50; ++i) u[i] = 0.0;
  const auto minima = stable_configurations(landscape_from_samples(u));
  ASSERT_EQ(minima.size(), 1u);
  EXPECT_NEAR(minima[0], 2 * kPi * 45 / 100, 1e-12);
}

TEST(Coherence, ReferenceValues) {
  EXPECT_EQ(coherence(0.0, 4), 1.0);
  EXPECT_EQ(coherence(1.0, 4), 0.0);
  // tests/oracles/reference_values.py
  EXPECT_NEAR(coherence(0.3, 4), 0.86638794299885377, 1e-14);
  EXPECT_NEAR(coherence(0.6, 4), 0.52372049461429936568, 1e-14);
  EXPECT_NEAR(coherence(1.2, 4), 0.18163563200134022147, 1e-14);
}

TEST(Coherence, NonIncreasingOnUnitInterval) {
  for (int n : {1, 2, 3, 4, 6, 8}) {
    double previous = 1.0;
    for (int k = 0; k <= 1000; ++k) {
      const double c = coherence(k / 1000.0, n);
      EXPECT_LE(c, previous + 1e-15) << "N=" << n << " xi=" << k / 1000.0;
      previous = c;
    }
  }
}

TEST(RollDrive, GainReferenceValues) {
  const Morphology m;
  // tests/oracles/reference_values.py
  EXPECT_NEAR(drive_gain(GaitParams::uniform(kPi / 4, 0.0), m), 2.1850660198836098325, 1e-13);
  EXPECT_NEAR(drive_gain(GaitParams::uniform(kPi / 12, 0.0), m), 0.79978967222355453377,
              1e-13);
  EXPECT_NEAR(drive_gain(GaitParams::uniform(kPi / 4, 0.6), m), 1.144363856698342634, 1e-13);
  EXPECT_GT(drive_gain(GaitParams::uniform(kPi / 4, 0.3), m),
            drive_gain(GaitParams::uniform(kPi / 12, 0.3), m));

  GaitParams no_lift;
  no_lift.amplitude_vertical = 0.0;
  EXPECT_EQ(drive_gain(no_lift, m), 0.0);
}

TEST(RollDrive, TorqueLaw) {
  const Morphology m;
  const auto p = GaitParams::uniform(kPi / 4, 0.2);
  const double g = drive_gain(p, m);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int k = 0; k < 1000; ++k) {
    const double t = u(rng);
    const double gamma = u(rng);
    EXPECT_LE(std::abs(roll_drive(p, m, t, gamma)), g);
  }
  EXPECT_EQ(roll_drive(p, m, 1.5, 1.5), 0.0);
}

TEST(SimulateRoll, LimblessHalfCycleIsHalfRoll) {
  const auto traj = simulate_roll(GaitParams::uniform(kPi / 4, 0.0), limbless(), half_cycle());
  EXPECT_NEAR(body_delta(traj), kPi, 1e-3);
  EXPECT_NEAR(traj.time.back() - traj.time.front(), kPi, 1e-12);
  const auto outcome = classify_trial(traj);
  EXPECT_TRUE(outcome.self_righted);
  EXPECT_DOUBLE_EQ(outcome.rolls_per_cycle, 0.5);
}

TEST(SimulateRoll, LimblessFullCyclesRollOncePerCycle) {
  const auto traj = simulate_roll(GaitParams::uniform(kPi / 4, 0.3), limbless(), cycles(3));
  ASSERT_EQ(traj.delta_gamma_per_cycle.size(), 3u);
  for (double d : traj.delta_gamma_per_cycle) EXPECT_NEAR(d, 2 * kPi, 1e-3);
  EXPECT_NEAR(traj.time.back(), 3 * traj.period, 1e-9);
}

TEST(SimulateRoll, LeggedOneShot) {
  const Morphology legged;
  const auto success = simulate_roll(GaitParams::uniform(kPi / 4, 0.0), legged, half_cycle());
  EXPECT_NEAR(body_delta(success), kPi, 2 * energy_landscape(legged).step());
  EXPECT_TRUE(classify_trial(success).self_righted);

  const auto failure = simulate_roll(GaitParams::uniform(kPi / 12, 0.0), legged, half_cycle());
  EXPECT_LT(body_delta(failure), kPi / 4);
  const auto outcome = classify_trial(failure);
  EXPECT_FALSE(outcome.self_righted);
  EXPECT_TRUE(outcome.stalled);
}

TEST(SimulateRoll, SegmentedRollStartsAtTheHead) {
  const auto traj = simulate_roll(GaitParams::uniform(kPi / 4, 0.6), Morphology{},
                                  cycles(1, RollMode::kSegmented));
  ASSERT_EQ(traj.num_modules(), 10u);
  const auto crossings = traj.crossing_times(kPi / 2);
  for (std::size_t k = 0; k < crossings.size(); ++k) ASSERT_TRUE(crossings[k]) << k;
  // Module 10 is the head.
  for (std::size_t k = 0; k + 1 < crossings.size(); ++k) {
    EXPECT_GT(*crossings[k], *crossings[k + 1]) << k;
  }
  EXPECT_TRUE(classify_trial(traj).self_righted);
}

TEST(SimulateRoll, RejectsBadOptions) {
  const auto p = GaitParams::uniform(kPi / 4, 0.0);
  SimulationOptions o;
  o.steps_per_cycle = 199;
  EXPECT_THROW(simulate_roll(p, Morphology{}, o), std::invalid_argument);
  o = {};
  o.cycles = 0;
  EXPECT_THROW(simulate_roll(p, Morphology{}, o), std::invalid_argument);
  GaitParams mismatched = p;
  mismatched.num_lateral_joints = 3;
  EXPECT_THROW(simulate_roll(mismatched, Morphology{}, {}), DimensionError);
}

TEST(SimulateRoll, NonFiniteStateIsReported) {
  RollState init;
  init.gamma = std::nan("");
  try {
    simulate_roll(GaitParams::uniform(kPi / 4, 0.0), Morphology{}, {}, init);
    FAIL() << "expected IntegrationError";
  } catch (const IntegrationError& e) {
    EXPECT_EQ(e.step(), 0u);
  }
}

TEST(ClassifyTrial, ReferenceCases) {
  RollTrajectory t;
  t.period = 2 * kPi;
  t.time = {0.0, 2 * kPi};
  t.gamma = {{kPi}, {3 * kPi}};
  t.delta_gamma_per_cycle = {2 * kPi};
  auto o = classify_trial(t);
  EXPECT_DOUBLE_EQ(o.rolls_per_cycle, 1.0);
  EXPECT_TRUE(o.self_righted);
  EXPECT_FALSE(o.stalled);

  t.gamma = {{kPi}, {kPi}};
  t.delta_gamma_per_cycle = {0.0};
  o = classify_trial(t);
  EXPECT_EQ(o.rolls_per_cycle, 0.0);
  EXPECT_FALSE(o.self_righted);
  EXPECT_TRUE(o.stalled);

  t.delta_gamma_per_cycle = {2 * kPi, 0.0};
  EXPECT_DOUBLE_EQ(classify_trial(t).rolls_per_cycle, 0.5);

  // Solver-level residue is no roll.
  t.delta_gamma_per_cycle = {3e-15, 1e-12};
  EXPECT_EQ(classify_trial(t).rolls_per_cycle, 0.0);
  t.delta_gamma_per_cycle = {1e-6};
  EXPECT_GT(classify_trial(t).rolls_per_cycle, 0.0);

  EXPECT_THROW(classify_trial(RollTrajectory{}), std::invalid_argument);
}

// Properties.

TEST(RollProperty, LimblessFreeRollTracksPhase) {
  for (double a : {kPi / 24, kPi / 12, kPi / 4, kPi / 2}) {
    for (double xi : {0.0, 0.3, 0.6, 0.9, 1.2}) {
      const auto p = GaitParams::uniform(a, xi);
      if (coherence(xi, p.num_lateral_joints) <= 0.05) continue;
      const auto traj = simulate_roll(p, limbless(), cycles(2));
      double worst = 0.0;
      for (std::size_t n = 0; n < traj.time.size(); ++n) {
        const double rolled = traj.body_gamma(n) - kPi;
        worst = std::max(worst, std::abs(rolled - p.temporal_frequency * traj.time[n]));
      }
      EXPECT_LE(worst, 0.05) << "A=" << a << " xi=" << xi;
    }
  }
}

TEST(RollProperty, WeakDriveStalls) {
  const Morphology legged;
  const auto land = energy_landscape(legged);
  for (double a : {kPi / 24, kPi / 12, kPi / 8}) {
    for (double xi : {0.0, 0.4, 0.8}) {
      const auto p = GaitParams::uniform(a, xi);
      ASSERT_LT(drive_gain(p, legged), land.max_slope());
      const auto traj = simulate_roll(p, legged, land, cycles(3));
      for (double d : traj.delta_gamma_per_cycle) {
        EXPECT_LT(std::abs(d), kPi / 2) << "A=" << a << " xi=" << xi;
      }
    }
  }
}

TEST(RollProperty, SegmentedMatchesLumpedWhenStiff) {
  auto stiff = cycles(2, RollMode::kSegmented);
  stiff.calibration.coupling = 50.0;
  for (double a : {kPi / 6, kPi / 4, kPi / 3}) {
    const auto p = GaitParams::uniform(a, 0.0);
    const auto lumped = simulate_roll(p, Morphology{}, cycles(2));
    const auto seg = simulate_roll(p, Morphology{}, stiff);
    for (int c = 0; c < 2; ++c) {
      const double ref = lumped.delta_gamma_per_cycle[c];
      EXPECT_NEAR(seg.delta_gamma_per_cycle[c], ref, 0.05 * std::max(std::abs(ref), 1e-9))
          << "A=" << a;
    }
  }
}

TEST(RollProperty, Deterministic) {
  auto o = cycles(2, RollMode::kSegmented);
  o.perturbation = PerturbationSpec::standard(1234);
  const auto p = GaitParams::uniform(kPi / 5, 0.45);
  const auto a = simulate_roll(p, Morphology{}, o);
  const auto b = simulate_roll(p, Morphology{}, o);
  EXPECT_EQ(a.time, b.time);
  EXPECT_EQ(a.gamma, b.gamma);
  EXPECT_EQ(a.delta_gamma_per_cycle, b.delta_gamma_per_cycle);
  EXPECT_EQ(a.drive_gain, b.drive_gain);

  o.perturbation.seed = 1235;
  const auto c = simulate_roll(p, Morphology{}, o);
  EXPECT_NE(a.gamma.front(), c.gamma.front());
}

TEST(RollProperty, PerturbationStaysInRange) {
  const auto p = GaitParams::uniform(kPi / 4, 0.0);
  const double nominal = drive_gain(p, Morphology{});
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto o = cycles(1);
    o.perturbation = PerturbationSpec::standard(seed);
    o.steps_per_cycle = 200;
    const auto t = simulate_roll(p, limbless(), o);
    EXPECT_LE(std::abs(t.drive_gain / nominal - 1.0), 0.1 + 1e-12);
    EXPECT_LE(std::abs(t.gamma.front()[0] - kPi), 0.2 + 1e-12);
  }
}

}  // namespace
