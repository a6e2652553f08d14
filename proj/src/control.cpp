#include "smcquad/control.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smcquad/errors.hpp"

namespace smcquad {

void AxisControllerConfig::validate(const char* axis) const {
  if (!(lambda > 0.0)) {
    throw ValidationError(std::string("controller.") + axis + ".lambda must be > 0");
  }
  if (!(k > 0.0)) {
    throw ValidationError(std::string("controller.") + axis + ".k must be > 0");
  }
}

void MassEstimatorState::validate() const {
  if (!(m_min > 0.0)) throw ValidationError("adaptation.m_min must be > 0");
  if (!(m_min <= m_max)) throw ValidationError("adaptation.m_min must not exceed m_max");
  if (!(m_hat >= m_min && m_hat <= m_max)) {
    throw ValidationError("adaptation.m_hat must lie within [m_min, m_max]");
  }
  if (!(gamma > 0.0)) throw ValidationError("adaptation.gamma must be > 0");
}

double sliding_surface(double e, double e_dot, double lambda) { return e_dot + lambda * e; }

ThrustCommand altitude_control(double z, double z_dot, double phi, double theta,
                               const ReferenceSample& ref, const MassEstimatorState& est,
                               const AxisControllerConfig& cfg, double g, double eps_tilt,
                               double u1_max) {
  const double e = z - ref.value;
  const double e_dot = z_dot - ref.rate;
  const double s = sliding_surface(e, e_dot, cfg.lambda);

  const double tilt = std::cos(theta) * std::cos(phi);
  ThrustCommand cmd;
  cmd.tilt_guard_active = tilt < eps_tilt;

  const double divisor = std::max(tilt, eps_tilt);
  const double u1 = est.m_hat / divisor * (ref.accel - cfg.lambda * e_dot - cfg.k * s + g);
  cmd.u1 = std::clamp(u1, 0.0, u1_max);
  return cmd;
}

double attitude_control_roll(double phi, double phi_dot, double theta_dot, double psi_dot,
                             const ReferenceSample& ref, double w_bar,
                             const QuadrotorParams& p, const AxisControllerConfig& cfg) {
  const double e = phi - ref.value;
  const double e_dot = phi_dot - ref.rate;
  const double s = sliding_surface(e, e_dot, cfg.lambda);
  const double coupling = (p.i_yy - p.i_zz) * psi_dot * theta_dot - p.j_r * w_bar * theta_dot;
  return p.i_xx / p.l * (ref.accel - cfg.lambda * e_dot - cfg.k * s) - coupling / p.l;
}

double attitude_control_pitch(double theta, double theta_dot, double phi_dot, double psi_dot,
                              const ReferenceSample& ref, double w_bar,
                              const QuadrotorParams& p, const AxisControllerConfig& cfg) {
  const double e = theta - ref.value;
  const double e_dot = theta_dot - ref.rate;
  const double s = sliding_surface(e, e_dot, cfg.lambda);
  const double coupling = (p.i_zz - p.i_xx) * psi_dot * phi_dot - p.j_r * w_bar * phi_dot;
  return p.i_yy / p.l * (ref.accel - cfg.lambda * e_dot - cfg.k * s) - coupling / p.l;
}

double attitude_control_yaw(double psi, double psi_dot, double phi_dot, double theta_dot,
                            const ReferenceSample& ref, const QuadrotorParams& p,
                            const AxisControllerConfig& cfg) {
  const double e = psi - ref.value;
  const double e_dot = psi_dot - ref.rate;
  const double s = sliding_surface(e, e_dot, cfg.lambda);
  const double coupling = (p.i_xx - p.i_yy) * phi_dot * theta_dot;
  return p.i_zz * (ref.accel - cfg.lambda * e_dot - cfg.k * s) - coupling;
}

double mass_adaptation_derivative(double s_z, const ReferenceSample& ref, double e_dot_z,
                                  const AxisControllerConfig& cfg,
                                  const MassEstimatorState& est, double g) {
  const double raw = -est.gamma * s_z * (ref.accel - cfg.lambda * e_dot_z + g);
  if (est.m_hat >= est.m_max && raw > 0.0) return 0.0;
  if (est.m_hat <= est.m_min && raw < 0.0) return 0.0;
  return raw;
}

double lyapunov_v1(double s) { return 0.5 * s * s; }

double lyapunov_v2(double s, double m_true, double m_hat, double gamma) {
  const double m_err = m_true - m_hat;
  return 0.5 * m_true * s * s + m_err * m_err / (2.0 * gamma);
}

double closed_loop_residual(double s_dot, double s, double m_true, double m_hat,
                            const ReferenceSample& ref, double e_dot_z,
                            const AxisControllerConfig& cfg, double g) {
  const double m_err = m_true - m_hat;
  return m_true * s_dot + m_hat * cfg.k * s + m_err * (ref.accel - cfg.lambda * e_dot_z + g);
}

}  // namespace smcquad
