#pragma once

#include "smcquad/control.hpp"

namespace smcquad {

enum class ReferenceKind { Constant, SmoothedStep, Sinusoid };

/// One axis' reference trajectory. Steps are smoothed with a quintic ramp
/// over `step_rise` seconds so the commanded acceleration exists
/// everywhere; rate and accel are always the exact derivatives of value.
struct ReferenceProgram {
  ReferenceKind kind = ReferenceKind::Constant;

  double value = 0.0;  // constant level

  double step_t0 = 0.0;
  double step_from = 0.0;
  double step_to = 0.0;
  double step_rise = 1.0;

  double amplitude = 0.0;
  double frequency_hz = 0.0;
  double phase = 0.0;

  void validate(const char* axis) const;
};

ReferenceSample eval_reference(const ReferenceProgram& program, double t);

}  // namespace smcquad
