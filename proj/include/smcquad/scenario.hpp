#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "smcquad/control.hpp"
#include "smcquad/dynamics.hpp"
#include "smcquad/observer.hpp"
#include "smcquad/reference.hpp"
#include "smcquad/state.hpp"

namespace smcquad {

/// Axis index for disturbances: translational first, then rotational.
enum class BodyAxis { X = 0, Y = 1, Z = 2, Phi = 3, Theta = 4, Psi = 5 };

enum class DisturbanceKind { None, Step, Sinusoid, Impulse };

/// Additive acceleration disturbance on one axis.
struct DisturbanceProfile {
  DisturbanceKind kind = DisturbanceKind::None;
  BodyAxis axis = BodyAxis::Z;

  double t0 = 0.0;         // step / impulse onset
  double magnitude = 0.0;  // step / impulse level
  double width = 0.1;      // impulse duration [s]

  double amplitude = 0.0;  // sinusoid
  double frequency_hz = 0.0;
  double phase = 0.0;

  void validate() const;
};

DisturbanceSample eval_disturbance(const DisturbanceProfile& profile, double t);

enum class MassScheduleKind { Constant, Steps, Ramp };

/// True plant mass as a function of time.
struct MassSchedule {
  MassScheduleKind kind = MassScheduleKind::Constant;

  double value = 0.486;  // constant level; also the level before the first step

  std::vector<double> times;   // ascending step instants
  std::vector<double> values;  // level from times[i] onward

  double ramp_t0 = 0.0;
  double ramp_t1 = 1.0;
  double ramp_from = 0.486;
  double ramp_to = 0.486;

  void validate(double m_min, double m_max) const;
};

double eval_mass_schedule(const MassSchedule& schedule, double t);

/// Measurement noise standard deviations for the position-level channels.
struct NoiseConfig {
  double z = 0.0;
  double phi = 0.0;
  double theta = 0.0;
  double psi = 0.0;

  void validate() const;
};

/// Observer configuration for one axis: gains plus an optional initial
/// estimate (defaults to the true initial position with zero rate).
struct ObserverAxisConfig {
  ObserverGains gains = suggest_gains_default();
  std::optional<std::array<double, 2>> initial;

  static ObserverGains suggest_gains_default();
};

struct ObserverConfig {
  bool in_loop = false;  ///< feed estimates to the controller after warm-up
  double t_obs = 0.5;    ///< warm-up time during which control sees true states
  ObserverAxisConfig z;
  ObserverAxisConfig phi;
  ObserverAxisConfig theta;
  ObserverAxisConfig psi;
};

struct ControllerConfig {
  AxisControllerConfig z;
  AxisControllerConfig phi;
  AxisControllerConfig theta;
  AxisControllerConfig psi;
  double eps_tilt = kTiltGuard;
  /// Thrust ceiling; defaults to what the rotor ceiling can realize,
  /// 4 b w_max^2.
  std::optional<double> u1_max;
};

struct AdaptationConfig {
  bool enabled = true;
  double m_hat0 = 0.3402;  // 0.7 x the default true mass
  double gamma = 0.5;
  double m_min = 0.1;
  double m_max = 2.0;
};

struct SimulationLimits {
  double w_max = kRotorSpeedMax;
  double angle_guard = kAngleGuard;
};

/// Complete description of one deterministic closed-loop run.
struct Scenario {
  double duration = 10.0;
  double dt = 1e-3;
  std::uint64_t seed = 1;

  QuadrotorParams params;
  RigidBodyState initial_state;

  ReferenceProgram ref_z;
  ReferenceProgram ref_phi;
  ReferenceProgram ref_theta;
  ReferenceProgram ref_psi;

  DisturbanceProfile disturbance;
  MassSchedule mass;
  NoiseConfig noise;

  ControllerConfig controller;
  AdaptationConfig adaptation;
  ObserverConfig observer;
  SimulationLimits limits;

  /// Throws ValidationError naming the violated invariant.
  void validate() const;

  double u1_max() const;
};

}  // namespace smcquad
