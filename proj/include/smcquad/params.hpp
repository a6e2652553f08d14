#pragma once

namespace smcquad {

/// Physical constants of the vehicle. Defaults are the bench values the
/// bundled scenarios are calibrated against.
struct QuadrotorParams {
  double m = 0.486;      ///< mass [kg]
  double l = 0.25;       ///< arm length, center of mass to rotor axis [m]
  double i_xx = 3.82e-3; ///< roll inertia [kg m^2]
  double i_yy = 3.82e-3; ///< pitch inertia [kg m^2]
  double i_zz = 7.65e-3; ///< yaw inertia [kg m^2]
  double d = 3.23e-7;    ///< rotor drag coefficient, torque per (rad/s)^2
  double b = 2.98e-5;    ///< rotor thrust coefficient, force per (rad/s)^2
  double j_r = 2.83e-5;  ///< rotor inertia [kg m^2]
  double g = 9.8;        ///< gravity [m/s^2]

  /// Throws ValidationError unless every field is strictly positive.
  void validate() const;

  double hover_thrust() const { return m * g; }
};

}  // namespace smcquad
