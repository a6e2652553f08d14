#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "smcquad/dynamics.hpp"
#include "smcquad/errors.hpp"
#include "smcquad/observer.hpp"
#include "smcquad/rk4.hpp"

using namespace smcquad;

TEST_CASE("corrections at the origin are zero") {
  const ObserverGains g{2.0, 5.0, 1.0};
  const CorrectionTerms v = correction_terms(0.0, g);
  CHECK(v.v1 == 0.0);
  CHECK(v.v2 == 0.0);
}

TEST_CASE("corrections at unit error expose the gains") {
  const ObserverGains g{2.0, 5.0, 1.0};
  const CorrectionTerms v = correction_terms(1.0, g);
  CHECK(v.v1 == 2.0);
  CHECK(v.v2 == 5.0);
}

TEST_CASE("corrections at a negative quarter") {
  const ObserverGains g{2.0, 5.0, 1.0};
  const CorrectionTerms v = correction_terms(-0.25, g);
  CHECK(v.v1 == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(v.v2 == -5.0);
}

TEST_CASE("corrections are odd") {
  const ObserverGains g{1.7, 3.1, 2.0};
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> val(-4.0, 4.0);
  for (int i = 0; i < 500; ++i) {
    const double e = val(gen);
    const CorrectionTerms plus = correction_terms(e, g);
    const CorrectionTerms minus = correction_terms(-e, g);
    CHECK(plus.v1 == -minus.v1);
    CHECK(plus.v2 == -minus.v2);
  }
}

TEST_CASE("gain suggestion") {
  const ObserverGains one = suggest_gains(1.0);
  CHECK(one.alpha == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(one.beta == doctest::Approx(1.1).epsilon(1e-14));
  CHECK_NOTHROW(one.validate("z"));

  const ObserverGains four = suggest_gains(4.0);
  CHECK(four.alpha == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(four.beta == doctest::Approx(4.4).epsilon(1e-14));

  CHECK_THROWS_AS(suggest_gains(0.0), NonPositiveBoundError);
  CHECK_THROWS_AS(suggest_gains(-2.0), NonPositiveBoundError);
}

TEST_CASE("gain invariants") {
  ObserverGains g{1.0, 0.5, 1.0};  // beta below the bound
  CHECK_THROWS_AS(g.validate("z"), ValidationError);
  g = ObserverGains{0.0, 2.0, 1.0};
  CHECK_THROWS_AS(g.validate("z"), ValidationError);
}

TEST_CASE("altitude observer at an exact estimate under hover input") {
  QuadrotorParams p;
  const ObserverGains g = suggest_gains(2.0);
  const SuperTwistingObserverState obs{1.3, -0.4};
  const double u1 = 0.486 * 9.8;
  const ObserverDerivative d =
      altitude_observer_derivative(obs, 1.3, u1, 0.0, 0.0, 0.486, p, g);
  CHECK(d.dx1_hat == obs.x2_hat);
  CHECK(std::abs(d.dx2_hat) < 1e-12);
}

TEST_CASE("altitude observer with unit output error and no thrust") {
  QuadrotorParams p;
  const ObserverGains g = suggest_gains(4.0);
  const SuperTwistingObserverState obs{0.0, 0.0};
  const ObserverDerivative d = altitude_observer_derivative(obs, 1.0, 0.0, 0.0, 0.0, 0.486, p, g);
  CHECK(d.dx1_hat == doctest::Approx(g.alpha).epsilon(1e-14));
  CHECK(d.dx2_hat == doctest::Approx(-9.8 + g.beta).epsilon(1e-14));
}

TEST_CASE("altitude observer free-fall consistency") {
  QuadrotorParams p;
  const ObserverGains g = suggest_gains(2.0);
  const SuperTwistingObserverState obs{2.0, -1.0};
  const ObserverDerivative d = altitude_observer_derivative(obs, 2.0, 0.0, 0.0, 0.0, 0.486, p, g);
  CHECK(d.dx2_hat == doctest::Approx(-9.8).epsilon(1e-14));
}

TEST_CASE("attitude observer drift matches the rigid-body model at estimated states") {
  QuadrotorParams p;
  const ObserverGains g = suggest_gains(2.0);
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double phi_rate = val(gen), theta_rate = val(gen), psi_rate = val(gen);
    const double u2 = 0.1 * val(gen), u3 = 0.1 * val(gen), u4 = 0.01 * val(gen);
    const double w_bar = 50.0 * val(gen);

    RigidBodyState s;
    s.phi_dot = phi_rate;
    s.theta_dot = theta_rate;
    s.psi_dot = psi_rate;
    const StateDerivative d =
        state_derivative(s, ControlVector{0.0, u2, u3, u4}, w_bar, p, DisturbanceSample{});

    // Zero output error isolates the drift.
    const SuperTwistingObserverState roll{0.3, val(gen)};
    const ObserverDerivative droll =
        roll_observer_derivative(roll, 0.3, u2, theta_rate, psi_rate, w_bar, p, g);
    CHECK(droll.dx2_hat == doctest::Approx(d.phi_ddot).epsilon(1e-13));

    const SuperTwistingObserverState pitch{-0.2, val(gen)};
    const ObserverDerivative dpitch =
        pitch_observer_derivative(pitch, -0.2, u3, phi_rate, psi_rate, w_bar, p, g);
    CHECK(dpitch.dx2_hat == doctest::Approx(d.theta_ddot).epsilon(1e-13));

    const SuperTwistingObserverState yaw{0.1, val(gen)};
    const ObserverDerivative dyaw =
        yaw_observer_derivative(yaw, 0.1, u4, phi_rate, theta_rate, p, g);
    CHECK(dyaw.dx2_hat == doctest::Approx(d.psi_ddot).epsilon(1e-13));
  }
}

TEST_CASE("error dynamics converge in finite time at desk scale") {
  // Standalone twisting loop: x1_tilde' = x2_tilde - alpha sqrt(|x1|) sgn,
  // x2_tilde' = F(t) - beta sgn, with |F| <= 0.5 covered by f_plus = 2.
  const ObserverGains g = suggest_gains(2.0);
  const auto f = [&](double t, const std::array<double, 2>& e) {
    const double sgn = sign0(e[0]);
    const double forcing = 0.5 * std::sin(3.0 * t);
    return std::array<double, 2>{e[1] - g.alpha * std::sqrt(std::abs(e[0])) * sgn,
                                 forcing - g.beta * sgn};
  };

  std::array<double, 2> e{0.5, 0.0};
  const double dt = 1e-3;
  const int steps = 3000;
  std::vector<double> history;
  history.push_back(std::abs(e[0]));
  for (int k = 0; k < steps; ++k) {
    e = rk4_step<2>(f, e, k * dt, dt);
    history.push_back(std::abs(e[0]));
  }

  // Convergence = first entry below 1e-3 after which the error never
  // exceeds 1e-2 again.
  std::vector<double> suffix_max(history.size());
  double running = 0.0;
  for (std::size_t k = history.size(); k-- > 0;) {
    running = std::max(running, history[k]);
    suffix_max[k] = running;
  }
  double converged_at = -1.0;
  for (std::size_t k = 0; k < history.size(); ++k) {
    if (history[k] < 1e-3 && suffix_max[k] < 1e-2) {
      converged_at = static_cast<double>(k) * dt;
      break;
    }
  }
  CHECK(converged_at >= 0.0);
  CHECK(converged_at <= 1.0);
}
