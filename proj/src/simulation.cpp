#include "smcquad/simulation.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "smcquad/errors.hpp"
#include "smcquad/rk4.hpp"
#include "smcquad/rng.hpp"

namespace smcquad {

namespace {

// ODE layout: 12 plant states, the mass estimate, then (x1_hat, x2_hat)
// for the z, phi, theta, psi observers.
constexpr std::size_t kStates = 21;
constexpr std::size_t kMassIdx = 12;
constexpr std::size_t kObsBase = 13;

using StateVec = std::array<double, kStates>;

RigidBodyState unpack_plant(const StateVec& v) {
  RigidBodyState s;
  s.x = v[0];
  s.y = v[1];
  s.z = v[2];
  s.phi = v[3];
  s.theta = v[4];
  s.psi = v[5];
  s.x_dot = v[6];
  s.y_dot = v[7];
  s.z_dot = v[8];
  s.phi_dot = v[9];
  s.theta_dot = v[10];
  s.psi_dot = v[11];
  return s;
}

// Values frozen at the start of a step: the measurement noise, the
// one-step-delayed gyroscopic residual seen by the attitude laws, and the
// cross-axis estimates consumed by the observer drift terms.
struct StepContext {
  double noise_z = 0.0, noise_phi = 0.0, noise_theta = 0.0, noise_psi = 0.0;
  double w_bar_ctrl = 0.0;
  double phi_hat0 = 0.0, theta_hat0 = 0.0;
  double phi_rate_hat0 = 0.0, theta_rate_hat0 = 0.0, psi_rate_hat0 = 0.0;
  bool use_estimates = false;
};

struct LoopEval {
  ReferenceSample ref_z, ref_phi, ref_theta, ref_psi;
  double meas_z = 0.0, meas_phi = 0.0, meas_theta = 0.0, meas_psi = 0.0;
  SurfaceSample surfaces;
  double e_dot_z = 0.0;
  ControlVector u_cmd;
  bool tilt_guard = false;
  RotorAllocation alloc;
  ControlVector u_realized;
  double w_bar_plant = 0.0;
  StateDerivative plant_deriv;
  double dm_hat = 0.0;
  ObserverDerivative d_obs_z, d_obs_phi, d_obs_theta, d_obs_psi;
};

LoopEval evaluate_loop(const Scenario& sc, double t, const StateVec& v, const StepContext& ctx) {
  LoopEval ev;
  ev.ref_z = eval_reference(sc.ref_z, t);
  ev.ref_phi = eval_reference(sc.ref_phi, t);
  ev.ref_theta = eval_reference(sc.ref_theta, t);
  ev.ref_psi = eval_reference(sc.ref_psi, t);

  const RigidBodyState truth = unpack_plant(v);
  ev.meas_z = truth.z + ctx.noise_z;
  ev.meas_phi = truth.phi + ctx.noise_phi;
  ev.meas_theta = truth.theta + ctx.noise_theta;
  ev.meas_psi = truth.psi + ctx.noise_psi;

  // Controller-side view of the state: truth during warm-up or with the
  // observer out of the loop, estimates afterwards.
  double z_c, z_dot_c, phi_c, phi_dot_c, theta_c, theta_dot_c, psi_c, psi_dot_c;
  if (ctx.use_estimates) {
    z_c = v[kObsBase + 0];
    z_dot_c = v[kObsBase + 1];
    phi_c = v[kObsBase + 2];
    phi_dot_c = v[kObsBase + 3];
    theta_c = v[kObsBase + 4];
    theta_dot_c = v[kObsBase + 5];
    psi_c = v[kObsBase + 6];
    psi_dot_c = v[kObsBase + 7];
  } else {
    z_c = truth.z;
    z_dot_c = truth.z_dot;
    phi_c = truth.phi;
    phi_dot_c = truth.phi_dot;
    theta_c = truth.theta;
    theta_dot_c = truth.theta_dot;
    psi_c = truth.psi;
    psi_dot_c = truth.psi_dot;
  }

  ev.e_dot_z = z_dot_c - ev.ref_z.rate;
  ev.surfaces.s_z = sliding_surface(z_c - ev.ref_z.value, ev.e_dot_z, sc.controller.z.lambda);
  ev.surfaces.s_phi = sliding_surface(phi_c - ev.ref_phi.value, phi_dot_c - ev.ref_phi.rate,
                                      sc.controller.phi.lambda);
  ev.surfaces.s_theta = sliding_surface(theta_c - ev.ref_theta.value,
                                        theta_dot_c - ev.ref_theta.rate,
                                        sc.controller.theta.lambda);
  ev.surfaces.s_psi = sliding_surface(psi_c - ev.ref_psi.value, psi_dot_c - ev.ref_psi.rate,
                                      sc.controller.psi.lambda);

  const MassEstimatorState est{v[kMassIdx], sc.adaptation.gamma, sc.adaptation.m_min,
                               sc.adaptation.m_max};

  const ThrustCommand thrust =
      altitude_control(z_c, z_dot_c, phi_c, theta_c, ev.ref_z, est, sc.controller.z,
                       sc.params.g, sc.controller.eps_tilt, sc.u1_max());
  ev.tilt_guard = thrust.tilt_guard_active;
  ev.u_cmd.u1 = thrust.u1;
  ev.u_cmd.u2 = attitude_control_roll(phi_c, phi_dot_c, theta_dot_c, psi_dot_c, ev.ref_phi,
                                      ctx.w_bar_ctrl, sc.params, sc.controller.phi);
  ev.u_cmd.u3 = attitude_control_pitch(theta_c, theta_dot_c, phi_dot_c, psi_dot_c, ev.ref_theta,
                                       ctx.w_bar_ctrl, sc.params, sc.controller.theta);
  ev.u_cmd.u4 = attitude_control_yaw(psi_c, psi_dot_c, phi_dot_c, theta_dot_c, ev.ref_psi,
                                     sc.params, sc.controller.psi);

  ev.alloc = rotors_from_controls(ev.u_cmd, sc.params, sc.limits.w_max);
  ev.u_realized = controls_from_rotors(ev.alloc.speeds, sc.params);
  ev.w_bar_plant = gyro_residual(ev.alloc.speeds);

  QuadrotorParams plant_params = sc.params;
  plant_params.m = eval_mass_schedule(sc.mass, t);
  const DisturbanceSample xi = eval_disturbance(sc.disturbance, t);
  ev.plant_deriv = state_derivative(truth, ev.u_realized, ev.w_bar_plant, plant_params, xi,
                                    sc.limits.angle_guard);

  ev.dm_hat = sc.adaptation.enabled
                  ? mass_adaptation_derivative(ev.surfaces.s_z, ev.ref_z, ev.e_dot_z,
                                               sc.controller.z, est, sc.params.g)
                  : 0.0;

  const SuperTwistingObserverState obs_z{v[kObsBase + 0], v[kObsBase + 1]};
  const SuperTwistingObserverState obs_phi{v[kObsBase + 2], v[kObsBase + 3]};
  const SuperTwistingObserverState obs_theta{v[kObsBase + 4], v[kObsBase + 5]};
  const SuperTwistingObserverState obs_psi{v[kObsBase + 6], v[kObsBase + 7]};

  ev.d_obs_z = altitude_observer_derivative(obs_z, ev.meas_z, ev.u_cmd.u1, ctx.phi_hat0,
                                            ctx.theta_hat0, v[kMassIdx], sc.params,
                                            sc.observer.z.gains);
  ev.d_obs_phi =
      roll_observer_derivative(obs_phi, ev.meas_phi, ev.u_cmd.u2, ctx.theta_rate_hat0,
                               ctx.psi_rate_hat0, ev.w_bar_plant, sc.params,
                               sc.observer.phi.gains);
  ev.d_obs_theta =
      pitch_observer_derivative(obs_theta, ev.meas_theta, ev.u_cmd.u3, ctx.phi_rate_hat0,
                                ctx.psi_rate_hat0, ev.w_bar_plant, sc.params,
                                sc.observer.theta.gains);
  ev.d_obs_psi = yaw_observer_derivative(obs_psi, ev.meas_psi, ev.u_cmd.u4, ctx.phi_rate_hat0,
                                         ctx.theta_rate_hat0, sc.params, sc.observer.psi.gains);
  return ev;
}

StateVec loop_derivative(const Scenario& sc, double t, const StateVec& v,
                         const StepContext& ctx) {
  const LoopEval ev = evaluate_loop(sc, t, v, ctx);
  StateVec d;
  d[0] = ev.plant_deriv.x_dot;
  d[1] = ev.plant_deriv.y_dot;
  d[2] = ev.plant_deriv.z_dot;
  d[3] = ev.plant_deriv.phi_dot;
  d[4] = ev.plant_deriv.theta_dot;
  d[5] = ev.plant_deriv.psi_dot;
  d[6] = ev.plant_deriv.x_ddot;
  d[7] = ev.plant_deriv.y_ddot;
  d[8] = ev.plant_deriv.z_ddot;
  d[9] = ev.plant_deriv.phi_ddot;
  d[10] = ev.plant_deriv.theta_ddot;
  d[11] = ev.plant_deriv.psi_ddot;
  d[kMassIdx] = ev.dm_hat;
  d[kObsBase + 0] = ev.d_obs_z.dx1_hat;
  d[kObsBase + 1] = ev.d_obs_z.dx2_hat;
  d[kObsBase + 2] = ev.d_obs_phi.dx1_hat;
  d[kObsBase + 3] = ev.d_obs_phi.dx2_hat;
  d[kObsBase + 4] = ev.d_obs_theta.dx1_hat;
  d[kObsBase + 5] = ev.d_obs_theta.dx2_hat;
  d[kObsBase + 6] = ev.d_obs_psi.dx1_hat;
  d[kObsBase + 7] = ev.d_obs_psi.dx2_hat;
  return d;
}

TimeSeriesRecord make_record(const Scenario& sc, double t, const StateVec& v,
                             const LoopEval& ev) {
  TimeSeriesRecord r;
  r.time = t;
  r.x = v[0];
  r.y = v[1];
  r.z = v[2];
  r.phi = v[3];
  r.theta = v[4];
  r.psi = v[5];
  r.x_dot = v[6];
  r.y_dot = v[7];
  r.z_dot = v[8];
  r.phi_dot = v[9];
  r.theta_dot = v[10];
  r.psi_dot = v[11];
  r.meas_z = ev.meas_z;
  r.meas_phi = ev.meas_phi;
  r.meas_theta = ev.meas_theta;
  r.meas_psi = ev.meas_psi;
  r.ref_z = ev.ref_z.value;
  r.ref_phi = ev.ref_phi.value;
  r.ref_theta = ev.ref_theta.value;
  r.ref_psi = ev.ref_psi.value;
  r.z_hat = v[kObsBase + 0];
  r.z_dot_hat = v[kObsBase + 1];
  r.phi_hat = v[kObsBase + 2];
  r.phi_dot_hat = v[kObsBase + 3];
  r.theta_hat = v[kObsBase + 4];
  r.theta_dot_hat = v[kObsBase + 5];
  r.psi_hat = v[kObsBase + 6];
  r.psi_dot_hat = v[kObsBase + 7];
  r.s_z = ev.surfaces.s_z;
  r.s_phi = ev.surfaces.s_phi;
  r.s_theta = ev.surfaces.s_theta;
  r.s_psi = ev.surfaces.s_psi;
  r.u1 = ev.u_cmd.u1;
  r.u2 = ev.u_cmd.u2;
  r.u3 = ev.u_cmd.u3;
  r.u4 = ev.u_cmd.u4;
  r.w1 = ev.alloc.speeds.w1;
  r.w2 = ev.alloc.speeds.w2;
  r.w3 = ev.alloc.speeds.w3;
  r.w4 = ev.alloc.speeds.w4;
  r.m_hat = v[kMassIdx];
  r.m_true = eval_mass_schedule(sc.mass, t);
  r.lyap_v1 = lyapunov_v1(ev.surfaces.s_z);
  r.lyap_v2 = lyapunov_v2(ev.surfaces.s_z, r.m_true, r.m_hat, sc.adaptation.gamma);
  r.obs_z_dx1 = ev.d_obs_z.dx1_hat;
  r.obs_z_dx2 = ev.d_obs_z.dx2_hat;
  r.flag_tilt_guard = ev.tilt_guard;
  r.flag_saturated = ev.alloc.saturated;
  r.flag_infeasible = ev.alloc.infeasible;
  return r;
}

}  // namespace

std::size_t expected_record_count(const Scenario& scenario) {
  return static_cast<std::size_t>(std::floor(scenario.duration / scenario.dt)) + 1;
}

TimeSeriesLog run_scenario(const Scenario& sc) {
  sc.validate();
  const auto t_start = std::chrono::steady_clock::now();

  StateVec v{};
  v[0] = sc.initial_state.x;
  v[1] = sc.initial_state.y;
  v[2] = sc.initial_state.z;
  v[3] = sc.initial_state.phi;
  v[4] = sc.initial_state.theta;
  v[5] = sc.initial_state.psi;
  v[6] = sc.initial_state.x_dot;
  v[7] = sc.initial_state.y_dot;
  v[8] = sc.initial_state.z_dot;
  v[9] = sc.initial_state.phi_dot;
  v[10] = sc.initial_state.theta_dot;
  v[11] = sc.initial_state.psi_dot;
  v[kMassIdx] = sc.adaptation.m_hat0;

  const auto init_axis = [&](const ObserverAxisConfig& cfg, std::size_t slot, double pos,
                             double rate) {
    if (cfg.initial) {
      v[kObsBase + 2 * slot] = (*cfg.initial)[0];
      v[kObsBase + 2 * slot + 1] = (*cfg.initial)[1];
    } else {
      v[kObsBase + 2 * slot] = pos;
      v[kObsBase + 2 * slot + 1] = rate;
    }
  };
  init_axis(sc.observer.z, 0, sc.initial_state.z, sc.initial_state.z_dot);
  init_axis(sc.observer.phi, 1, sc.initial_state.phi, sc.initial_state.phi_dot);
  init_axis(sc.observer.theta, 2, sc.initial_state.theta, sc.initial_state.theta_dot);
  init_axis(sc.observer.psi, 3, sc.initial_state.psi, sc.initial_state.psi_dot);

  NoiseRng rng_z = NoiseRng::channel_stream(sc.seed, 0);
  NoiseRng rng_phi = NoiseRng::channel_stream(sc.seed, 1);
  NoiseRng rng_theta = NoiseRng::channel_stream(sc.seed, 2);
  NoiseRng rng_psi = NoiseRng::channel_stream(sc.seed, 3);

  const std::size_t n_records = expected_record_count(sc);
  TimeSeriesLog log;
  log.records.reserve(n_records);

  double w_bar_ctrl = 0.0;

  for (std::size_t k = 0; k < n_records; ++k) {
    const double t = static_cast<double>(k) * sc.dt;

    StepContext ctx;
    {
      const NoiseDraw nz = sample_noise(rng_z, sc.noise.z);
      const NoiseDraw nphi = sample_noise(rng_phi, sc.noise.phi);
      const NoiseDraw ntheta = sample_noise(rng_theta, sc.noise.theta);
      const NoiseDraw npsi = sample_noise(rng_psi, sc.noise.psi);
      ctx.noise_z = nz.value;
      ctx.noise_phi = nphi.value;
      ctx.noise_theta = ntheta.value;
      ctx.noise_psi = npsi.value;
      rng_z = nz.next;
      rng_phi = nphi.next;
      rng_theta = ntheta.next;
      rng_psi = npsi.next;
    }
    ctx.w_bar_ctrl = w_bar_ctrl;
    ctx.phi_hat0 = v[kObsBase + 2];
    ctx.theta_hat0 = v[kObsBase + 4];
    ctx.phi_rate_hat0 = v[kObsBase + 3];
    ctx.theta_rate_hat0 = v[kObsBase + 5];
    ctx.psi_rate_hat0 = v[kObsBase + 7];
    ctx.use_estimates = sc.observer.in_loop && t >= sc.observer.t_obs;

    try {
      const LoopEval ev = evaluate_loop(sc, t, v, ctx);
      log.records.push_back(make_record(sc, t, v, ev));
      w_bar_ctrl = gyro_residual(ev.alloc.speeds);

      if (k + 1 < n_records) {
        v = rk4_step<kStates>(
            [&](double ts, const StateVec& vs) { return loop_derivative(sc, ts, vs, ctx); }, v,
            t, sc.dt);
        // Projection keeps the estimate physical even when a stage
        // overshoots the bound.
        if (v[kMassIdx] < sc.adaptation.m_min) v[kMassIdx] = sc.adaptation.m_min;
        if (v[kMassIdx] > sc.adaptation.m_max) v[kMassIdx] = sc.adaptation.m_max;
      }
    } catch (const AngleSingularityError& e) {
      throw AngleSingularityError(std::string(e.what()) + " (step " + std::to_string(k) +
                                  ", t = " + std::to_string(t) + " s)");
    } catch (const NonFiniteStateError& e) {
      throw NonFiniteStateError(std::string(e.what()) + " (step " + std::to_string(k) +
                                ", t = " + std::to_string(t) + " s)");
    }
  }

  log.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return log;
}

}  // namespace smcquad
