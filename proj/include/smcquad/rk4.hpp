#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "smcquad/errors.hpp"

namespace smcquad {

namespace detail {

template <std::size_t N>
bool all_finite(const std::array<double, N>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace detail

/// Classical four-stage explicit Runge-Kutta update. The derivative
/// callback is invoked at each stage time with the stage state, so
/// feedback laws and sign terms are re-evaluated per stage.
///
/// Throws ValidationError for dt <= 0 and NonFiniteStateError when any
/// stage derivative or the combined state is non-finite.
template <std::size_t N, class F>
std::array<double, N> rk4_step(F&& f, const std::array<double, N>& x, double t, double dt) {
  if (!(dt > 0.0)) {
    throw ValidationError("rk4_step: dt must be > 0");
  }

  const auto stage = [&](const std::array<double, N>& base, const std::array<double, N>& slope,
                         double scale) {
    std::array<double, N> out;
    for (std::size_t i = 0; i < N; ++i) out[i] = base[i] + scale * slope[i];
    return out;
  };
  const auto check = [&](const std::array<double, N>& v, int stage_index) {
    if (!detail::all_finite(v)) {
      throw NonFiniteStateError("rk4_step: non-finite value at stage " +
                                std::to_string(stage_index));
    }
  };

  const std::array<double, N> k1 = f(t, x);
  check(k1, 1);
  const std::array<double, N> k2 = f(t + 0.5 * dt, stage(x, k1, 0.5 * dt));
  check(k2, 2);
  const std::array<double, N> k3 = f(t + 0.5 * dt, stage(x, k2, 0.5 * dt));
  check(k3, 3);
  const std::array<double, N> k4 = f(t + dt, stage(x, k3, dt));
  check(k4, 4);

  std::array<double, N> next;
  for (std::size_t i = 0; i < N; ++i) {
    next[i] = x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  check(next, 5);
  return next;
}

}  // namespace smcquad
