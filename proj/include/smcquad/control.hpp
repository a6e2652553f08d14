#pragma once

#include "smcquad/params.hpp"

namespace smcquad {

/// Per-axis sliding-surface slope and reaching gain, both 1/s.
struct AxisControllerConfig {
  double lambda = 2.0;
  double k = 3.0;

  void validate(const char* axis) const;
};

/// Reference value with its exact first and second derivatives, SI units.
struct ReferenceSample {
  double value = 0.0;
  double rate = 0.0;
  double accel = 0.0;
};

/// Online mass estimate with adaptation gain and projection bounds.
struct MassEstimatorState {
  double m_hat = 0.3402;
  double gamma = 0.5;
  double m_min = 0.1;
  double m_max = 2.0;

  void validate() const;
};

/// Sliding-surface values for the four controlled axes.
struct SurfaceSample {
  double s_z = 0.0;
  double s_phi = 0.0;
  double s_theta = 0.0;
  double s_psi = 0.0;
};

/// S = e_dot + lambda * e. S = 0 is the manifold on which the tracking
/// error decays exponentially with rate lambda.
double sliding_surface(double e, double e_dot, double lambda);

/// Tilt divisor floor: cos(theta)cos(phi) below this engages the guard.
inline constexpr double kTiltGuard = 0.1;

struct ThrustCommand {
  double u1 = 0.0;             ///< commanded thrust, clamped to [0, u1_max]
  bool tilt_guard_active = false;
};

/// Adaptive altitude thrust law. Drives S_z toward zero with reaching gain
/// k while feeding forward the reference acceleration and gravity, scaled
/// by the current mass estimate:
///   u1 = m_hat / max(cos(theta)cos(phi), eps_tilt)
///        * (ref.accel - lambda * e_dot - k * S_z + g)
ThrustCommand altitude_control(double z, double z_dot, double phi, double theta,
                               const ReferenceSample& ref, const MassEstimatorState& est,
                               const AxisControllerConfig& cfg, double g,
                               double eps_tilt = kTiltGuard, double u1_max = 119.2);

/// Roll moment input: feedback-linearizes the roll channel so the surface
/// obeys S_dot = -k S, cancelling the yaw-pitch coupling and the
/// gyroscopic term. Inertias and arm length are taken as exactly known.
double attitude_control_roll(double phi, double phi_dot, double theta_dot, double psi_dot,
                             const ReferenceSample& ref, double w_bar,
                             const QuadrotorParams& p, const AxisControllerConfig& cfg);

/// Pitch mirror of attitude_control_roll.
double attitude_control_pitch(double theta, double theta_dot, double phi_dot, double psi_dot,
                              const ReferenceSample& ref, double w_bar,
                              const QuadrotorParams& p, const AxisControllerConfig& cfg);

/// Yaw torque input; no gyroscopic term on this axis.
double attitude_control_yaw(double psi, double psi_dot, double phi_dot, double theta_dot,
                            const ReferenceSample& ref, const QuadrotorParams& p,
                            const AxisControllerConfig& cfg);

/// Adaptation rate for the mass estimate:
///   dm_hat/dt = -gamma * S_z * (ref.accel - lambda * e_dot_z + g)
/// projected to zero whenever the raw update would push m_hat outside
/// [m_min, m_max].
double mass_adaptation_derivative(double s_z, const ReferenceSample& ref, double e_dot_z,
                                  const AxisControllerConfig& cfg,
                                  const MassEstimatorState& est, double g);

/// Quadratic surface energy, 0.5 * s^2.
double lyapunov_v1(double s);

/// Composite candidate coupling the surface and the mass estimation error:
/// 0.5 * m_true * s^2 + (m_true - m_hat)^2 / (2 gamma).
double lyapunov_v2(double s, double m_true, double m_hat, double gamma);

/// Diagnostic that vanishes along closed-loop altitude trajectories while
/// the tilt guard is inactive:
///   m_true * s_dot + m_hat * k * s
///     + (m_true - m_hat) * (ref.accel - lambda * e_dot_z + g)
double closed_loop_residual(double s_dot, double s, double m_true, double m_hat,
                            const ReferenceSample& ref, double e_dot_z,
                            const AxisControllerConfig& cfg, double g);

}  // namespace smcquad
