#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "smcquad/acceptance.hpp"
#include "smcquad/errors.hpp"
#include "smcquad/logging.hpp"
#include "smcquad/rk4.hpp"
#include "smcquad/simulation.hpp"

using namespace smcquad;

TEST_CASE("rk4 leaves the state alone under a zero field") {
  const auto f = [](double, const std::array<double, 3>& x) {
    (void)x;
    return std::array<double, 3>{0.0, 0.0, 0.0};
  };
  const std::array<double, 3> x{1.0, -2.0, 3.0};
  CHECK(rk4_step<3>(f, x, 0.0, 0.1) == x);
}

TEST_CASE("rk4 integrates a constant field exactly") {
  const auto f = [](double, const std::array<double, 1>&) {
    return std::array<double, 1>{2.5};
  };
  std::array<double, 1> x{1.0};
  x = rk4_step<1>(f, x, 0.0, 0.2);
  CHECK(x[0] == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("rk4 tracks the exponential to fifth order") {
  const auto f = [](double, const std::array<double, 1>& x) {
    return std::array<double, 1>{x[0]};
  };
  std::array<double, 1> x{1.0};
  x = rk4_step<1>(f, x, 0.0, 0.1);
  CHECK(std::abs(x[0] - std::exp(0.1)) < 1e-7);
  CHECK(x[0] == doctest::Approx(1.10517091).epsilon(1e-7));
}

TEST_CASE("rk4 rejects bad steps and non-finite stages") {
  const auto f = [](double, const std::array<double, 1>& x) {
    return std::array<double, 1>{x[0]};
  };
  CHECK_THROWS_AS(rk4_step<1>(f, std::array<double, 1>{1.0}, 0.0, 0.0), ValidationError);

  const auto bad = [](double, const std::array<double, 1>&) {
    return std::array<double, 1>{std::nan("")};
  };
  CHECK_THROWS_AS(rk4_step<1>(bad, std::array<double, 1>{1.0}, 0.0, 0.1), NonFiniteStateError);
}

TEST_CASE("ballistic drop matches the closed form") {
  QuadrotorParams p;
  const auto f = [&](double, const std::array<double, 2>& x) {
    RigidBodyState s;
    s.z = x[0];
    s.z_dot = x[1];
    const StateDerivative d = state_derivative(s, ControlVector{}, 0.0, p, DisturbanceSample{});
    return std::array<double, 2>{d.z_dot, d.z_ddot};
  };
  std::array<double, 2> x{5.0, 0.0};
  const double dt = 1e-3;
  for (int k = 0; k < 1000; ++k) x = rk4_step<2>(f, x, k * dt, dt);
  CHECK(std::abs(x[0] - (5.0 - 0.5 * 9.8)) < 1e-8);
}

TEST_CASE("equilibrium scenario stays pinned") {
  Scenario sc;
  sc.duration = 2.0;
  sc.adaptation.enabled = false;
  sc.adaptation.m_hat0 = sc.params.m;

  const TimeSeriesLog log = run_scenario(sc);
  CHECK(log.records.size() == expected_record_count(sc));
  const double hover = sc.params.m * sc.params.g;
  for (const auto& r : log.records) {
    CHECK(std::abs(r.s_z) < 1e-12);
    CHECK(std::abs(r.s_phi) < 1e-12);
    CHECK(r.u1 == doctest::Approx(hover).epsilon(1e-14));
    CHECK(r.w1 == doctest::Approx(log.records.front().w1).epsilon(1e-14));
    CHECK(std::abs(r.z) < 1e-10);
    CHECK_FALSE(r.flag_tilt_guard);
    CHECK_FALSE(r.flag_saturated);
    CHECK_FALSE(r.flag_infeasible);
  }
}

TEST_CASE("identical scenario and seed give byte-identical CSV") {
  Scenario sc;
  sc.duration = 1.0;
  sc.noise.z = 0.01;
  sc.noise.phi = 0.002;
  sc.seed = 77;
  const std::string a = log_to_csv(run_scenario(sc));
  const std::string b = log_to_csv(run_scenario(sc));
  CHECK(a == b);

  sc.seed = 78;
  const std::string c = log_to_csv(run_scenario(sc));
  CHECK(a != c);
}

TEST_CASE("zero noise measurements equal the true state exactly") {
  Scenario sc;
  sc.duration = 1.0;
  for (const auto& r : run_scenario(sc).records) {
    CHECK(r.meas_z == r.z);
    CHECK(r.meas_phi == r.phi);
    CHECK(r.meas_theta == r.theta);
    CHECK(r.meas_psi == r.psi);
  }
}

TEST_CASE("record count follows floor(duration/dt) + 1") {
  Scenario sc;
  sc.duration = 0.0105;
  sc.dt = 1e-3;
  CHECK(run_scenario(sc).records.size() == expected_record_count(sc));

  sc.duration = 1.0;
  CHECK(expected_record_count(sc) == 1001);
}

TEST_CASE("surface envelope decays at the reaching rate") {
  const Scenario sc = acceptance::altitude_tracking_scenario();
  const TimeSeriesLog log = run_scenario(sc);
  const double s0 = std::abs(log.records.front().s_z);
  REQUIRE(s0 > 0.0);
  const double slack = 1.0 + 10.0 * sc.dt;
  for (const auto& r : log.records) {
    CHECK(std::abs(r.s_z) <= s0 * std::exp(-sc.controller.z.k * r.time) * slack + 1e-12);
  }
}

TEST_CASE("nominal run raises no flags") {
  const TimeSeriesLog log = run_scenario(acceptance::altitude_tracking_scenario());
  for (const auto& r : log.records) {
    CHECK_FALSE(r.flag_tilt_guard);
    CHECK_FALSE(r.flag_saturated);
    CHECK_FALSE(r.flag_infeasible);
  }
}

TEST_CASE("composite Lyapunov sequence is non-increasing under adaptation") {
  Scenario sc = acceptance::adaptation_scenario();
  sc.duration = 4.0;
  const TimeSeriesLog log = run_scenario(sc);
  for (std::size_t i = 1; i < log.records.size(); ++i) {
    CHECK(log.records[i].lyap_v2 <= log.records[i - 1].lyap_v2 + 1e-6);
  }
}

TEST_CASE("mass estimate never leaves the projection bounds") {
  Scenario sc = acceptance::mass_constant_scenario();
  sc.duration = 5.0;
  sc.adaptation.gamma = 20.0;  // deliberately aggressive
  sc.adaptation.m_hat0 = 0.15;
  sc.noise.z = 0.05;
  sc.observer.in_loop = true;
  const TimeSeriesLog log = run_scenario(sc);
  for (const auto& r : log.records) {
    CHECK(r.m_hat >= sc.adaptation.m_min);
    CHECK(r.m_hat <= sc.adaptation.m_max);
  }
}

TEST_CASE("a tumbling start hits the angle guard with step context") {
  Scenario sc;
  sc.duration = 2.0;
  sc.initial_state.theta_dot = 50.0;
  try {
    run_scenario(sc);
    FAIL("expected AngleSingularityError");
  } catch (const AngleSingularityError& e) {
    CHECK(std::string(e.what()).find("step") != std::string::npos);
  }
}
