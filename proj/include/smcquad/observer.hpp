#pragma once

#include "smcquad/params.hpp"

namespace smcquad {

/// Super-twisting correction gains. `f_plus` is the assumed bound on the
/// aggregate perturbation the observer must dominate; the invariant
/// beta > f_plus > 0 is what buys finite-time convergence.
struct ObserverGains {
  double alpha = 0.0;
  double beta = 0.0;
  double f_plus = 0.0;

  void validate(const char* axis) const;
};

/// One axis of the observer: position-level and velocity-level estimates.
struct SuperTwistingObserverState {
  double x1_hat = 0.0;
  double x2_hat = 0.0;
};

struct CorrectionTerms {
  double v1 = 0.0;
  double v2 = 0.0;
};

struct ObserverDerivative {
  double dx1_hat = 0.0;
  double dx2_hat = 0.0;
};

/// Sign function with sign0(0) == 0, so the exact-convergence fixed point
/// is stationary.
double sign0(double x);

/// Output error injections driven by the measured-minus-estimated output:
///   v1 = alpha * |e|^(1/2) * sign(e),  v2 = beta * sign(e)
CorrectionTerms correction_terms(double x1_tilde, const ObserverGains& gains);

/// Standard sufficient gain choice for a given perturbation bound:
/// beta = 1.1 f_plus, alpha = 1.5 sqrt(f_plus).
/// Throws NonPositiveBoundError for f_plus <= 0.
ObserverGains suggest_gains(double f_plus);

/// Altitude observer: drift is the vertical acceleration model evaluated
/// at the estimated attitude and the current mass estimate.
ObserverDerivative altitude_observer_derivative(const SuperTwistingObserverState& obs,
                                                double z_meas, double u1, double phi_hat,
                                                double theta_hat, double m_hat,
                                                const QuadrotorParams& p,
                                                const ObserverGains& gains);

/// Roll observer: drift is the roll acceleration model at estimated rates.
ObserverDerivative roll_observer_derivative(const SuperTwistingObserverState& obs,
                                            double phi_meas, double u2, double theta_rate_est,
                                            double psi_rate_est, double w_bar,
                                            const QuadrotorParams& p,
                                            const ObserverGains& gains);

ObserverDerivative pitch_observer_derivative(const SuperTwistingObserverState& obs,
                                             double theta_meas, double u3, double phi_rate_est,
                                             double psi_rate_est, double w_bar,
                                             const QuadrotorParams& p,
                                             const ObserverGains& gains);

ObserverDerivative yaw_observer_derivative(const SuperTwistingObserverState& obs,
                                           double psi_meas, double u4, double phi_rate_est,
                                           double theta_rate_est, const QuadrotorParams& p,
                                           const ObserverGains& gains);

}  // namespace smcquad
