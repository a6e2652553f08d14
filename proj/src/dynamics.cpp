#include "smcquad/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smcquad/errors.hpp"

namespace smcquad {

void QuadrotorParams::validate() const {
  const struct {
    const char* name;
    double value;
  } fields[] = {{"m", m},     {"l", l}, {"i_xx", i_xx}, {"i_yy", i_yy}, {"i_zz", i_zz},
                {"d", d},     {"b", b}, {"j_r", j_r},   {"g", g}};
  for (const auto& f : fields) {
    if (!(f.value > 0.0)) {
      throw ValidationError(std::string("QuadrotorParams: ") + f.name +
                            " must be strictly positive, got " + std::to_string(f.value));
    }
  }
}

ControlVector controls_from_rotors(const RotorSpeeds& w, const QuadrotorParams& p) {
  const double s1 = w.w1 * w.w1;
  const double s2 = w.w2 * w.w2;
  const double s3 = w.w3 * w.w3;
  const double s4 = w.w4 * w.w4;
  ControlVector u;
  u.u1 = p.b * (s1 + s2 + s3 + s4);
  u.u2 = p.b * (-s1 + s3);
  u.u3 = p.b * (-s2 + s4);
  u.u4 = p.d * (s1 - s2 + s3 - s4);
  return u;
}

RotorAllocation rotors_from_controls(const ControlVector& u, const QuadrotorParams& p,
                                     double w_max) {
  // Closed-form inverse of the mixing matrix in squared-speed space.
  const double a = u.u1 / p.b;
  const double c2 = u.u2 / p.b;
  const double c3 = u.u3 / p.b;
  const double c4 = u.u4 / p.d;

  double sq[4];
  sq[0] = 0.25 * (a - 2.0 * c2 + c4);
  sq[1] = 0.25 * (a - 2.0 * c3 - c4);
  sq[2] = 0.25 * (a + 2.0 * c2 + c4);
  sq[3] = 0.25 * (a + 2.0 * c3 - c4);

  RotorAllocation out;
  for (int i = 0; i < 4; ++i) {
    if (sq[i] < 0.0) {
      out.infeasible = true;
      if (-sq[i] > out.deficit) {
        out.deficit = -sq[i];
        out.worst_rotor = i;
      }
      sq[i] = 0.0;
    }
  }

  double speeds[4];
  for (int i = 0; i < 4; ++i) {
    speeds[i] = std::sqrt(sq[i]);
    if (speeds[i] > w_max) {
      out.saturated = true;
      speeds[i] = w_max;
    }
  }
  out.speeds = RotorSpeeds{speeds[0], speeds[1], speeds[2], speeds[3]};
  return out;
}

double gyro_residual(const RotorSpeeds& w) { return w.w1 - w.w2 + w.w3 - w.w4; }

StateDerivative state_derivative(const RigidBodyState& s, const ControlVector& u,
                                 double w_bar, const QuadrotorParams& p,
                                 const DisturbanceSample& xi, double angle_guard) {
  constexpr double kHalfPi = 1.5707963267948966;
  if (std::abs(s.theta) >= kHalfPi - angle_guard) {
    throw AngleSingularityError("state_derivative: |theta| = " + std::to_string(std::abs(s.theta)) +
                                " rad inside the guard band around pi/2");
  }

  const double c_phi = std::cos(s.phi);
  const double s_phi = std::sin(s.phi);
  const double c_theta = std::cos(s.theta);
  const double s_theta = std::sin(s.theta);
  const double c_psi = std::cos(s.psi);
  const double s_psi = std::sin(s.psi);

  StateDerivative d;
  d.x_dot = s.x_dot;
  d.y_dot = s.y_dot;
  d.z_dot = s.z_dot;
  d.phi_dot = s.phi_dot;
  d.theta_dot = s.theta_dot;
  d.psi_dot = s.psi_dot;

  d.x_ddot = (c_phi * s_theta * c_psi + s_phi * s_psi) * u.u1 / p.m + xi.x;
  d.y_ddot = (c_phi * s_theta * s_psi - s_phi * c_psi) * u.u1 / p.m + xi.y;
  d.z_ddot = (c_phi * c_theta) * u.u1 / p.m - p.g + xi.z;

  d.phi_ddot =
      ((p.i_yy - p.i_zz) * s.psi_dot * s.theta_dot - p.j_r * w_bar * s.theta_dot + p.l * u.u2) /
          p.i_xx +
      xi.phi;
  d.theta_ddot =
      ((p.i_zz - p.i_xx) * s.psi_dot * s.phi_dot - p.j_r * w_bar * s.phi_dot + p.l * u.u3) /
          p.i_yy +
      xi.theta;
  // The yaw input already carries the drag coefficient from the mixing
  // relation, so it enters the moment balance directly.
  d.psi_ddot = ((p.i_xx - p.i_yy) * s.phi_dot * s.theta_dot + u.u4) / p.i_zz + xi.psi;

  return d;
}

}  // namespace smcquad
