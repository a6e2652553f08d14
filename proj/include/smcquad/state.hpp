#pragma once

namespace smcquad {

/// Full rigid-body state: translational position, Euler attitude, and their
/// time derivatives. Angles are Z-Y-X Euler [rad]; positions in meters.
struct RigidBodyState {
  double x = 0.0, y = 0.0, z = 0.0;
  double phi = 0.0, theta = 0.0, psi = 0.0;
  double x_dot = 0.0, y_dot = 0.0, z_dot = 0.0;
  double phi_dot = 0.0, theta_dot = 0.0, psi_dot = 0.0;
};

/// Time derivative of RigidBodyState: rates followed by accelerations.
struct StateDerivative {
  double x_dot = 0.0, y_dot = 0.0, z_dot = 0.0;
  double phi_dot = 0.0, theta_dot = 0.0, psi_dot = 0.0;
  double x_ddot = 0.0, y_ddot = 0.0, z_ddot = 0.0;
  double phi_ddot = 0.0, theta_ddot = 0.0, psi_ddot = 0.0;
};

/// Virtual control inputs: total thrust u1 [N], roll/pitch moment inputs
/// u2, u3 [N], yaw torque u4 [N m].
struct ControlVector {
  double u1 = 0.0;
  double u2 = 0.0;
  double u3 = 0.0;
  double u4 = 0.0;
};

/// Physical rotor angular speeds [rad/s], all non-negative.
struct RotorSpeeds {
  double w1 = 0.0;
  double w2 = 0.0;
  double w3 = 0.0;
  double w4 = 0.0;
};

/// Additive acceleration disturbance per axis. Translational entries are
/// [m/s^2], rotational entries [rad/s^2].
struct DisturbanceSample {
  double x = 0.0, y = 0.0, z = 0.0;
  double phi = 0.0, theta = 0.0, psi = 0.0;
};

}  // namespace smcquad
