#pragma once

#include <string>
#include <vector>

#include "smcquad/scenario.hpp"

namespace smcquad::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Pinned scenarios the acceptance criteria run on. Exposed so the CLI and
/// tests can reproduce individual runs.
Scenario altitude_tracking_scenario();            // smoothed 1 m climb, exact mass estimate
Scenario attitude_tracking_scenario();            // 0.2 rad roll/pitch steps
Scenario adaptation_scenario();                   // climb with m_hat(0) = 0.7 m
Scenario mass_constant_scenario();                // sinusoidal altitude, constant mass
Scenario mass_step_scenario();                    // same with a mass step at t = 10 s
Scenario observer_convergence_scenario();         // altitude estimate starts 0.5 m off
Scenario noise_scenario(double noise_std_z);      // observer in the loop under noise
Scenario smooth_convergence_scenario(double dt);  // integrator order measurement

/// Runs every acceptance criterion and reports one result per criterion.
/// Individual failures (including thrown errors) are captured in the
/// result rather than propagated.
std::vector<CriterionResult> run_all();

}  // namespace smcquad::acceptance
