#include "smcquad/scenario.hpp"

#include <cmath>

#include "smcquad/errors.hpp"

namespace smcquad {

void DisturbanceProfile::validate() const {
  switch (kind) {
    case DisturbanceKind::None:
      break;
    case DisturbanceKind::Step:
      if (!(t0 >= 0.0)) throw ValidationError("disturbance.t0 must be >= 0");
      break;
    case DisturbanceKind::Impulse:
      if (!(t0 >= 0.0)) throw ValidationError("disturbance.t0 must be >= 0");
      if (!(width > 0.0)) throw ValidationError("disturbance.width must be > 0");
      break;
    case DisturbanceKind::Sinusoid:
      if (!(frequency_hz >= 0.0)) throw ValidationError("disturbance.frequency_hz must be >= 0");
      break;
  }
}

DisturbanceSample eval_disturbance(const DisturbanceProfile& profile, double t) {
  double level = 0.0;
  switch (profile.kind) {
    case DisturbanceKind::None:
      return {};
    case DisturbanceKind::Step:
      level = t >= profile.t0 ? profile.magnitude : 0.0;
      break;
    case DisturbanceKind::Impulse:
      level = (t >= profile.t0 && t < profile.t0 + profile.width) ? profile.magnitude : 0.0;
      break;
    case DisturbanceKind::Sinusoid: {
      constexpr double kTwoPi = 6.283185307179586;
      level = profile.amplitude * std::sin(kTwoPi * profile.frequency_hz * t + profile.phase);
      break;
    }
  }
  DisturbanceSample sample;
  switch (profile.axis) {
    case BodyAxis::X: sample.x = level; break;
    case BodyAxis::Y: sample.y = level; break;
    case BodyAxis::Z: sample.z = level; break;
    case BodyAxis::Phi: sample.phi = level; break;
    case BodyAxis::Theta: sample.theta = level; break;
    case BodyAxis::Psi: sample.psi = level; break;
  }
  return sample;
}

void MassSchedule::validate(double m_min, double m_max) const {
  const auto check = [&](double v) {
    if (!(v >= m_min && v <= m_max)) {
      throw ValidationError("mass schedule value " + std::to_string(v) +
                            " outside [m_min, m_max]");
    }
  };
  switch (kind) {
    case MassScheduleKind::Constant:
      check(value);
      break;
    case MassScheduleKind::Steps: {
      if (times.size() != values.size()) {
        throw ValidationError("mass.times and mass.values must have equal length");
      }
      for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) {
          throw ValidationError("mass.times must be strictly ascending");
        }
      }
      check(value);
      for (double v : values) check(v);
      break;
    }
    case MassScheduleKind::Ramp:
      if (!(ramp_t1 > ramp_t0)) throw ValidationError("mass ramp needs t1 > t0");
      check(ramp_from);
      check(ramp_to);
      break;
  }
}

double eval_mass_schedule(const MassSchedule& schedule, double t) {
  switch (schedule.kind) {
    case MassScheduleKind::Constant:
      return schedule.value;
    case MassScheduleKind::Steps: {
      double m = schedule.value;
      for (std::size_t i = 0; i < schedule.times.size(); ++i) {
        if (t >= schedule.times[i]) m = schedule.values[i];
      }
      return m;
    }
    case MassScheduleKind::Ramp: {
      if (t <= schedule.ramp_t0) return schedule.ramp_from;
      if (t >= schedule.ramp_t1) return schedule.ramp_to;
      const double tau = (t - schedule.ramp_t0) / (schedule.ramp_t1 - schedule.ramp_t0);
      return schedule.ramp_from + tau * (schedule.ramp_to - schedule.ramp_from);
    }
  }
  return schedule.value;
}

void NoiseConfig::validate() const {
  if (!(z >= 0.0 && phi >= 0.0 && theta >= 0.0 && psi >= 0.0)) {
    throw ValidationError("noise std must be >= 0");
  }
}

ObserverGains ObserverAxisConfig::suggest_gains_default() { return suggest_gains(2.0); }

double Scenario::u1_max() const {
  if (controller.u1_max) return *controller.u1_max;
  return 4.0 * params.b * limits.w_max * limits.w_max;
}

void Scenario::validate() const {
  if (!(dt > 0.0)) throw ValidationError("dt > 0");
  if (!(duration >= dt)) throw ValidationError("duration >= dt");
  params.validate();

  const double state_fields[] = {
      initial_state.x,       initial_state.y,         initial_state.z,
      initial_state.phi,     initial_state.theta,     initial_state.psi,
      initial_state.x_dot,   initial_state.y_dot,     initial_state.z_dot,
      initial_state.phi_dot, initial_state.theta_dot, initial_state.psi_dot};
  for (double v : state_fields) {
    if (!std::isfinite(v)) throw ValidationError("initial state must be finite");
  }
  constexpr double kHalfPi = 1.5707963267948966;
  if (std::abs(initial_state.theta) >= kHalfPi - limits.angle_guard) {
    throw ValidationError("initial theta lies inside the pitch singularity guard band");
  }

  ref_z.validate("z");
  ref_phi.validate("phi");
  ref_theta.validate("theta");
  ref_psi.validate("psi");

  disturbance.validate();
  mass.validate(adaptation.m_min, adaptation.m_max);
  noise.validate();

  controller.z.validate("z");
  controller.phi.validate("phi");
  controller.theta.validate("theta");
  controller.psi.validate("psi");
  if (!(controller.eps_tilt > 0.0)) throw ValidationError("controller.eps_tilt must be > 0");
  if (controller.u1_max && !(*controller.u1_max > 0.0)) {
    throw ValidationError("controller.u1_max must be > 0");
  }

  MassEstimatorState est{adaptation.m_hat0, adaptation.gamma, adaptation.m_min,
                         adaptation.m_max};
  est.validate();

  if (!(observer.t_obs >= 0.0)) throw ValidationError("observer.t_obs must be >= 0");
  observer.z.gains.validate("z");
  observer.phi.gains.validate("phi");
  observer.theta.gains.validate("theta");
  observer.psi.gains.validate("psi");

  if (!(limits.w_max > 0.0)) throw ValidationError("limits.w_max must be > 0");
  if (!(limits.angle_guard > 0.0)) throw ValidationError("limits.angle_guard must be > 0");
}

}  // namespace smcquad
