#pragma once

#include <optional>
#include <string>

#include "smcquad/simulation.hpp"

namespace smcquad {

struct SummaryThresholds {
  double eps_z = 0.01;     ///< altitude convergence band [m]
  double eps_att = 0.005;  ///< attitude convergence band [rad]
  double warmup = 0.0;     ///< metrics are computed for t >= warmup
};

struct AxisSummary {
  double rms_error = 0.0;
  /// First time after which |e| stays inside the band; empty when the run
  /// never settles.
  std::optional<double> convergence_time;
  /// Largest |S| from the convergence time onward (whole window when the
  /// axis never converged).
  double max_surface_after_convergence = 0.0;
};

struct RunSummary {
  AxisSummary z, phi, theta, psi;
  double final_m_hat = 0.0;
  double final_mass_error = 0.0;
  std::uint64_t tilt_guard_count = 0;
  std::uint64_t saturated_count = 0;
  std::uint64_t infeasible_count = 0;
  double wall_clock_seconds = 0.0;
};

/// Deterministic metrics over the post-warm-up window of a completed log.
/// Throws EmptyWindowError when warmup exceeds the log duration.
RunSummary summarize(const TimeSeriesLog& log, const SummaryThresholds& thresholds);

/// Human-readable JSON rendering of a summary.
std::string summary_to_json(const RunSummary& summary);

}  // namespace smcquad
