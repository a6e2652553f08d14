#include "smcquad/observer.hpp"

#include <cmath>
#include <string>

#include "smcquad/errors.hpp"

namespace smcquad {

void ObserverGains::validate(const char* axis) const {
  if (!(f_plus > 0.0)) {
    throw ValidationError(std::string("observer.") + axis + ".f_plus must be > 0");
  }
  if (!(alpha > 0.0)) {
    throw ValidationError(std::string("observer.") + axis + ".alpha must be > 0");
  }
  if (!(beta > f_plus)) {
    throw ValidationError(std::string("observer.") + axis +
                          ".beta must exceed f_plus for the injection to dominate");
  }
}

double sign0(double x) {
  if (x > 0.0) return 1.0;
  if (x < 0.0) return -1.0;
  return 0.0;
}

CorrectionTerms correction_terms(double x1_tilde, const ObserverGains& gains) {
  const double s = sign0(x1_tilde);
  return {gains.alpha * std::sqrt(std::abs(x1_tilde)) * s, gains.beta * s};
}

ObserverGains suggest_gains(double f_plus) {
  if (!(f_plus > 0.0)) {
    throw NonPositiveBoundError("suggest_gains: perturbation bound must be > 0, got " +
                                std::to_string(f_plus));
  }
  ObserverGains g;
  g.f_plus = f_plus;
  g.beta = 1.1 * f_plus;
  g.alpha = 1.5 * std::sqrt(f_plus);
  return g;
}

namespace {

ObserverDerivative with_corrections(const SuperTwistingObserverState& obs, double x1_meas,
                                    double drift, const ObserverGains& gains) {
  const CorrectionTerms v = correction_terms(x1_meas - obs.x1_hat, gains);
  return {obs.x2_hat + v.v1, drift + v.v2};
}

}  // namespace

ObserverDerivative altitude_observer_derivative(const SuperTwistingObserverState& obs,
                                                double z_meas, double u1, double phi_hat,
                                                double theta_hat, double m_hat,
                                                const QuadrotorParams& p,
                                                const ObserverGains& gains) {
  const double drift = std::cos(phi_hat) * std::cos(theta_hat) / m_hat * u1 - p.g;
  return with_corrections(obs, z_meas, drift, gains);
}

ObserverDerivative roll_observer_derivative(const SuperTwistingObserverState& obs,
                                            double phi_meas, double u2, double theta_rate_est,
                                            double psi_rate_est, double w_bar,
                                            const QuadrotorParams& p,
                                            const ObserverGains& gains) {
  const double drift = ((p.i_yy - p.i_zz) * psi_rate_est * theta_rate_est -
                        p.j_r * w_bar * theta_rate_est + p.l * u2) /
                       p.i_xx;
  return with_corrections(obs, phi_meas, drift, gains);
}

ObserverDerivative pitch_observer_derivative(const SuperTwistingObserverState& obs,
                                             double theta_meas, double u3, double phi_rate_est,
                                             double psi_rate_est, double w_bar,
                                             const QuadrotorParams& p,
                                             const ObserverGains& gains) {
  const double drift = ((p.i_zz - p.i_xx) * psi_rate_est * phi_rate_est -
                        p.j_r * w_bar * phi_rate_est + p.l * u3) /
                       p.i_yy;
  return with_corrections(obs, theta_meas, drift, gains);
}

ObserverDerivative yaw_observer_derivative(const SuperTwistingObserverState& obs,
                                           double psi_meas, double u4, double phi_rate_est,
                                           double theta_rate_est, const QuadrotorParams& p,
                                           const ObserverGains& gains) {
  const double drift = ((p.i_xx - p.i_yy) * phi_rate_est * theta_rate_est + u4) / p.i_zz;
  return with_corrections(obs, psi_meas, drift, gains);
}

}  // namespace smcquad
