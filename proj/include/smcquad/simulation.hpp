#pragma once

#include <cstdint>
#include <vector>

#include "smcquad/scenario.hpp"

namespace smcquad {

/// One row of the simulation log. Field order here matches the CSV column
/// order documented in logging.hpp.
struct TimeSeriesRecord {
  double time = 0.0;

  // true state
  double x = 0.0, y = 0.0, z = 0.0;
  double phi = 0.0, theta = 0.0, psi = 0.0;
  double x_dot = 0.0, y_dot = 0.0, z_dot = 0.0;
  double phi_dot = 0.0, theta_dot = 0.0, psi_dot = 0.0;

  // noisy position-level measurements
  double meas_z = 0.0, meas_phi = 0.0, meas_theta = 0.0, meas_psi = 0.0;

  // reference values
  double ref_z = 0.0, ref_phi = 0.0, ref_theta = 0.0, ref_psi = 0.0;

  // observer estimates
  double z_hat = 0.0, z_dot_hat = 0.0;
  double phi_hat = 0.0, phi_dot_hat = 0.0;
  double theta_hat = 0.0, theta_dot_hat = 0.0;
  double psi_hat = 0.0, psi_dot_hat = 0.0;

  // sliding surfaces as seen by the controller
  double s_z = 0.0, s_phi = 0.0, s_theta = 0.0, s_psi = 0.0;

  // commanded virtual inputs and allocated rotor speeds
  double u1 = 0.0, u2 = 0.0, u3 = 0.0, u4 = 0.0;
  double w1 = 0.0, w2 = 0.0, w3 = 0.0, w4 = 0.0;

  double m_hat = 0.0, m_true = 0.0;
  double lyap_v1 = 0.0, lyap_v2 = 0.0;

  // altitude observer derivatives at this record's time
  double obs_z_dx1 = 0.0, obs_z_dx2 = 0.0;

  bool flag_tilt_guard = false;
  bool flag_saturated = false;
  bool flag_infeasible = false;
};

struct TimeSeriesLog {
  std::vector<TimeSeriesRecord> records;
  double wall_clock_seconds = 0.0;
};

/// Runs the full closed loop on a uniform time grid: plant, per-axis
/// super-twisting observers, and the mass estimator are integrated
/// together with RK4; feedback laws and injection terms are re-evaluated
/// at every stage. Identical (scenario, seed) pairs produce bit-identical
/// logs.
///
/// Throws ValidationError for invalid scenarios; AngleSingularityError and
/// NonFiniteStateError propagate with step context attached.
TimeSeriesLog run_scenario(const Scenario& scenario);

/// Number of records a run of this scenario produces.
std::size_t expected_record_count(const Scenario& scenario);

}  // namespace smcquad
