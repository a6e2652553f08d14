#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "smcquad/control.hpp"
#include "smcquad/dynamics.hpp"
#include "smcquad/errors.hpp"

using namespace smcquad;

TEST_CASE("sliding surface") {
  CHECK(sliding_surface(0.0, 0.0, 5.0) == 0.0);
  CHECK(sliding_surface(1.0, 0.0, 2.0) == 2.0);
  CHECK(sliding_surface(0.5, -1.0, 2.0) == 0.0);
}

TEST_CASE("surface vanishes exactly when e_dot = -lambda e") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> val(-5.0, 5.0);
  std::uniform_real_distribution<double> slope(0.1, 10.0);
  for (int i = 0; i < 500; ++i) {
    const double e = val(gen), lambda = slope(gen);
    CHECK(sliding_surface(e, -lambda * e, lambda) == doctest::Approx(0.0).epsilon(1e-14));
    const double e_dot = val(gen);
    if (std::abs(e_dot + lambda * e) > 1e-9) {
      CHECK(sliding_surface(e, e_dot, lambda) != 0.0);
    }
  }
}

TEST_CASE("altitude law on-reference hover") {
  const MassEstimatorState est{0.486, 0.5, 0.1, 2.0};
  const AxisControllerConfig cfg{2.0, 3.0};
  const ThrustCommand cmd =
      altitude_control(0.0, 0.0, 0.0, 0.0, ReferenceSample{0.0, 0.0, 0.0}, est, cfg, 9.8);
  CHECK(cmd.u1 == doctest::Approx(4.7628).epsilon(1e-12));
  CHECK_FALSE(cmd.tilt_guard_active);
}

TEST_CASE("altitude law is linear in the mass estimate") {
  const AxisControllerConfig cfg{2.0, 3.0};
  const ThrustCommand half =
      altitude_control(0.0, 0.0, 0.0, 0.0, ReferenceSample{}, MassEstimatorState{0.243, 0.5, 0.1, 2.0},
                       cfg, 9.8);
  CHECK(half.u1 == doctest::Approx(2.3814).epsilon(1e-12));

  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> val(-0.3, 0.3);
  for (int i = 0; i < 200; ++i) {
    const double z = val(gen), z_dot = val(gen), phi = val(gen), theta = val(gen);
    const ReferenceSample ref{val(gen), val(gen), val(gen)};
    const MassEstimatorState est{0.4, 0.5, 0.1, 2.0};
    MassEstimatorState doubled = est;
    doubled.m_hat = 0.8;
    const double u_single =
        altitude_control(z, z_dot, phi, theta, ref, est, cfg, 9.8).u1;
    const double u_double =
        altitude_control(z, z_dot, phi, theta, ref, doubled, cfg, 9.8).u1;
    CHECK(u_double == doctest::Approx(2.0 * u_single).epsilon(1e-12));
  }
}

TEST_CASE("altitude law with an offset below the reference") {
  const MassEstimatorState est{0.486, 0.5, 0.1, 2.0};
  const AxisControllerConfig cfg{2.0, 3.0};
  // e_z = -0.5 at rest: S_z = -1, so the reaching term adds K to gravity.
  const ThrustCommand cmd =
      altitude_control(-0.5, 0.0, 0.0, 0.0, ReferenceSample{0.0, 0.0, 0.0}, est, cfg, 9.8);
  CHECK(cmd.u1 == doctest::Approx(6.2208).epsilon(1e-12));
}

TEST_CASE("altitude law clamps and flags extreme tilt") {
  const MassEstimatorState est{0.486, 0.5, 0.1, 2.0};
  const AxisControllerConfig cfg{2.0, 3.0};
  const ThrustCommand steep =
      altitude_control(0.0, 0.0, 0.0, 1.5, ReferenceSample{}, est, cfg, 9.8);
  CHECK(steep.tilt_guard_active);
  CHECK(steep.u1 == doctest::Approx(0.486 / 0.1 * 9.8));  // divisor floored at eps_tilt

  const ThrustCommand negative =
      altitude_control(10.0, 0.0, 0.0, 0.0, ReferenceSample{}, est, cfg, 9.8);
  CHECK(negative.u1 == 0.0);

  const ThrustCommand huge =
      altitude_control(-100.0, 0.0, 0.0, 0.0, ReferenceSample{}, est, cfg, 9.8, 0.1, 50.0);
  CHECK(huge.u1 == 50.0);
}

TEST_CASE("roll law at rest on the reference is zero") {
  QuadrotorParams p;
  CHECK(attitude_control_roll(0.0, 0.0, 0.0, 0.0, ReferenceSample{}, 0.0, p,
                              AxisControllerConfig{2.0, 3.0}) == 0.0);
}

TEST_CASE("roll law numeric case") {
  QuadrotorParams p;
  const double u2 = attitude_control_roll(0.1, 0.0, 0.0, 0.0, ReferenceSample{}, 0.0, p,
                                          AxisControllerConfig{2.0, 3.0});
  CHECK(u2 == doctest::Approx(-9.168e-3).epsilon(1e-10));
}

TEST_CASE("roll law cancels the cross-rate coupling") {
  QuadrotorParams p;
  const AxisControllerConfig cfg{2.0, 3.0};
  // On the surface with unit cross rates: the command must exactly null
  // the roll acceleration.
  const double u2 =
      attitude_control_roll(0.0, 0.0, 1.0, 1.0, ReferenceSample{}, 0.0, p, cfg);
  CHECK(u2 == doctest::Approx(1.532e-2).epsilon(1e-10));

  RigidBodyState s;
  s.theta_dot = 1.0;
  s.psi_dot = 1.0;
  const StateDerivative d =
      state_derivative(s, ControlVector{0.0, u2, 0.0, 0.0}, 0.0, p, DisturbanceSample{});
  CHECK(std::abs(d.phi_ddot) < 1e-12);
}

TEST_CASE("pitch law mirrors roll under matched inertias") {
  QuadrotorParams p;
  const AxisControllerConfig cfg{2.0, 3.0};
  CHECK(attitude_control_pitch(0.0, 0.0, 0.0, 0.0, ReferenceSample{}, 0.0, p, cfg) == 0.0);

  const double u3 = attitude_control_pitch(0.1, 0.0, 0.0, 0.0, ReferenceSample{}, 0.0, p, cfg);
  const double u2 = attitude_control_roll(0.1, 0.0, 0.0, 0.0, ReferenceSample{}, 0.0, p, cfg);
  CHECK(u3 == doctest::Approx(u2).epsilon(1e-14));

  // Coupling cancellation: unit roll/yaw rates, command nulls pitch accel.
  const double u3c =
      attitude_control_pitch(0.0, 0.0, 1.0, 1.0, ReferenceSample{}, 0.0, p, cfg);
  RigidBodyState s;
  s.phi_dot = 1.0;
  s.psi_dot = 1.0;
  const StateDerivative d =
      state_derivative(s, ControlVector{0.0, 0.0, u3c, 0.0}, 0.0, p, DisturbanceSample{});
  CHECK(std::abs(d.theta_ddot) < 1e-12);
}

TEST_CASE("yaw law numeric case and null coupling") {
  QuadrotorParams p;
  const AxisControllerConfig cfg{2.0, 3.0};
  CHECK(attitude_control_yaw(0.0, 0.0, 0.0, 0.0, ReferenceSample{}, p, cfg) == 0.0);

  const double u4 = attitude_control_yaw(0.2, 0.0, 0.0, 0.0, ReferenceSample{}, p, cfg);
  CHECK(u4 == doctest::Approx(-9.18e-3).epsilon(1e-10));

  // With i_xx == i_yy the coupling term vanishes for any rates.
  const double with_rates = attitude_control_yaw(0.2, 0.0, 5.0, -3.0, ReferenceSample{}, p, cfg);
  CHECK(with_rates == doctest::Approx(u4).epsilon(1e-14));
}

TEST_CASE("mass adaptation law") {
  const AxisControllerConfig cfg{2.0, 3.0};
  const MassEstimatorState est{0.486, 0.05, 0.1, 2.0};

  CHECK(mass_adaptation_derivative(0.0, ReferenceSample{}, 0.0, cfg, est, 9.8) == 0.0);
  CHECK(mass_adaptation_derivative(0.1, ReferenceSample{}, 0.0, cfg, est, 9.8) ==
        doctest::Approx(-0.049).epsilon(1e-12));

  MassEstimatorState at_max = est;
  at_max.m_hat = at_max.m_max;
  // Raw update positive (S < 0) but the estimate sits at the upper bound.
  CHECK(mass_adaptation_derivative(-0.1, ReferenceSample{}, 0.0, cfg, at_max, 9.8) == 0.0);

  MassEstimatorState at_min = est;
  at_min.m_hat = at_min.m_min;
  CHECK(mass_adaptation_derivative(0.1, ReferenceSample{}, 0.0, cfg, at_min, 9.8) == 0.0);
}

TEST_CASE("surface energy") {
  CHECK(lyapunov_v1(0.0) == 0.0);
  CHECK(lyapunov_v1(2.0) == 2.0);
  CHECK(lyapunov_v1(-2.0) == 2.0);
}

TEST_CASE("composite candidate") {
  CHECK(lyapunov_v2(0.0, 0.486, 0.486, 0.5) == 0.0);
  CHECK(lyapunov_v2(1.0, 0.486, 0.486, 0.7) == doctest::Approx(0.243).epsilon(1e-12));

  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> val(-3.0, 3.0);
  std::uniform_real_distribution<double> pos(0.01, 3.0);
  for (int i = 0; i < 500; ++i) {
    CHECK(lyapunov_v2(val(gen), pos(gen), val(gen), pos(gen)) >= 0.0);
  }
}

TEST_CASE("closed-loop residual vanishes with an exact estimate on the reaching law") {
  const AxisControllerConfig cfg{2.0, 3.0};
  const double m = 0.486;
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double s = val(gen);
    const ReferenceSample ref{val(gen), val(gen), val(gen)};
    const double e_dot = val(gen);
    const double s_dot = -cfg.k * s;  // what the exact-estimate loop enforces
    CHECK(std::abs(closed_loop_residual(s_dot, s, m, m, ref, e_dot, cfg, 9.8)) < 1e-14);
  }
}

TEST_CASE("closed-loop residual is not identically zero off the loop") {
  const AxisControllerConfig cfg{2.0, 3.0};
  const double r =
      closed_loop_residual(1.0, 1.0, 0.486, 0.3, ReferenceSample{0.0, 0.0, 0.5}, 0.2, cfg, 9.8);
  CHECK(std::abs(r) > 1e-3);
}

TEST_CASE("config validation") {
  const AxisControllerConfig zero_lambda{0.0, 3.0};
  const AxisControllerConfig negative_k{2.0, -1.0};
  const AxisControllerConfig good{2.0, 3.0};
  CHECK_THROWS_AS(zero_lambda.validate("z"), ValidationError);
  CHECK_THROWS_AS(negative_k.validate("z"), ValidationError);
  CHECK_NOTHROW(good.validate("z"));

  MassEstimatorState est{0.05, 0.5, 0.1, 2.0};  // estimate below the floor
  CHECK_THROWS_AS(est.validate(), ValidationError);
  est.m_hat = 0.5;
  est.gamma = 0.0;
  CHECK_THROWS_AS(est.validate(), ValidationError);
}
