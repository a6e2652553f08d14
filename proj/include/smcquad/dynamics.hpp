#pragma once

#include "smcquad/params.hpp"
#include "smcquad/state.hpp"

namespace smcquad {

/// Margin [rad] kept between |theta| and pi/2 before the Euler
/// parameterization is declared degenerate.
inline constexpr double kAngleGuard = 1e-3;

/// Default rotor speed ceiling [rad/s]; hover sits near 200 rad/s.
inline constexpr double kRotorSpeedMax = 1000.0;

/// Mixes rotor speeds into the virtual inputs:
///   u1 = b (w1^2 + w2^2 + w3^2 + w4^2)
///   u2 = b (-w1^2 + w3^2)
///   u3 = b (-w2^2 + w4^2)
///   u4 = d ( w1^2 - w2^2 + w3^2 - w4^2)
ControlVector controls_from_rotors(const RotorSpeeds& w, const QuadrotorParams& p);

/// Result of inverting the mixing relation. `speeds` is always usable: any
/// negative squared speed is clamped to zero and any speed above w_max is
/// clamped to w_max, with the corresponding flag raised.
struct RotorAllocation {
  RotorSpeeds speeds;
  bool infeasible = false; ///< some solved squared speed was negative
  int worst_rotor = -1;    ///< 0-based rotor index of the largest deficit
  double deficit = 0.0;    ///< magnitude of the most negative w_i^2 [rad^2/s^2]
  bool saturated = false;  ///< some speed exceeded w_max before clamping
};

/// Analytic inverse of controls_from_rotors followed by a square root.
/// When all four solved squared speeds lie in [0, w_max^2] the round trip
/// reproduces `u` to relative 1e-10.
RotorAllocation rotors_from_controls(const ControlVector& u, const QuadrotorParams& p,
                                     double w_max = kRotorSpeedMax);

/// Signed rotor-speed sum w1 - w2 + w3 - w4 driving the gyroscopic
/// coupling torques.
double gyro_residual(const RotorSpeeds& w);

/// Continuous-time accelerations of the rigid body under virtual inputs
/// `u`, gyroscopic residual `w_bar`, and additive disturbance `xi`.
/// Rate fields of the result are copied from the state rates.
///
/// Throws AngleSingularityError when |theta| >= pi/2 - angle_guard.
StateDerivative state_derivative(const RigidBodyState& s, const ControlVector& u,
                                 double w_bar, const QuadrotorParams& p,
                                 const DisturbanceSample& xi,
                                 double angle_guard = kAngleGuard);

}  // namespace smcquad
