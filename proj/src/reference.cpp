#include "smcquad/reference.hpp"

#include <cmath>
#include <string>

#include "smcquad/errors.hpp"

namespace smcquad {

void ReferenceProgram::validate(const char* axis) const {
  if (kind == ReferenceKind::SmoothedStep) {
    if (!(step_rise > 0.0)) {
      throw ValidationError(std::string("reference.") + axis + ".rise_time must be > 0");
    }
    if (!(step_t0 >= 0.0)) {
      throw ValidationError(std::string("reference.") + axis + ".t0 must be >= 0");
    }
  } else if (kind == ReferenceKind::Sinusoid) {
    if (!(frequency_hz >= 0.0)) {
      throw ValidationError(std::string("reference.") + axis + ".frequency_hz must be >= 0");
    }
  }
}

ReferenceSample eval_reference(const ReferenceProgram& program, double t) {
  switch (program.kind) {
    case ReferenceKind::Constant:
      return {program.value, 0.0, 0.0};

    case ReferenceKind::SmoothedStep: {
      if (t <= program.step_t0) {
        return {program.step_from, 0.0, 0.0};
      }
      const double span = program.step_to - program.step_from;
      const double tau = (t - program.step_t0) / program.step_rise;
      if (tau >= 1.0) {
        return {program.step_to, 0.0, 0.0};
      }
      // Quintic ramp: zero rate and acceleration at both ends.
      const double s = tau * tau * tau * (10.0 + tau * (-15.0 + 6.0 * tau));
      const double ds = tau * tau * (30.0 + tau * (-60.0 + 30.0 * tau));
      const double dds = tau * (60.0 + tau * (-180.0 + 120.0 * tau));
      return {program.step_from + span * s, span * ds / program.step_rise,
              span * dds / (program.step_rise * program.step_rise)};
    }

    case ReferenceKind::Sinusoid: {
      constexpr double kTwoPi = 6.283185307179586;
      const double omega = kTwoPi * program.frequency_hz;
      const double arg = omega * t + program.phase;
      return {program.amplitude * std::sin(arg), program.amplitude * omega * std::cos(arg),
              -program.amplitude * omega * omega * std::sin(arg)};
    }
  }
  return {};
}

}  // namespace smcquad
