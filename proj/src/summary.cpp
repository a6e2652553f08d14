#include "smcquad/summary.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "smcquad/errors.hpp"

namespace smcquad {

namespace {

AxisSummary summarize_axis(const std::vector<const TimeSeriesRecord*>& window,
                           double TimeSeriesRecord::* value, double TimeSeriesRecord::* ref,
                           double TimeSeriesRecord::* surface, double band) {
  AxisSummary out;

  double sum_sq = 0.0;
  for (const auto* r : window) {
    const double e = r->*value - r->*ref;
    sum_sq += e * e;
  }
  out.rms_error = std::sqrt(sum_sq / static_cast<double>(window.size()));

  // Walk backwards: the convergence time is the start of the final
  // uninterrupted in-band stretch that reaches the end of the window.
  std::size_t first_in_band = window.size();
  for (std::size_t i = window.size(); i-- > 0;) {
    const double e = window[i]->*value - window[i]->*ref;
    if (std::abs(e) < band) {
      first_in_band = i;
    } else {
      break;
    }
  }
  if (first_in_band < window.size()) {
    out.convergence_time = window[first_in_band]->time;
  }

  const std::size_t from = first_in_band < window.size() ? first_in_band : 0;
  for (std::size_t i = from; i < window.size(); ++i) {
    out.max_surface_after_convergence =
        std::max(out.max_surface_after_convergence, std::abs(window[i]->*surface));
  }
  return out;
}

}  // namespace

RunSummary summarize(const TimeSeriesLog& log, const SummaryThresholds& thresholds) {
  std::vector<const TimeSeriesRecord*> window;
  window.reserve(log.records.size());
  for (const auto& r : log.records) {
    if (r.time >= thresholds.warmup) window.push_back(&r);
  }
  if (window.empty()) {
    throw EmptyWindowError("summarize: warm-up of " + std::to_string(thresholds.warmup) +
                           " s leaves no records");
  }

  RunSummary out;
  out.z = summarize_axis(window, &TimeSeriesRecord::z, &TimeSeriesRecord::ref_z,
                         &TimeSeriesRecord::s_z, thresholds.eps_z);
  out.phi = summarize_axis(window, &TimeSeriesRecord::phi, &TimeSeriesRecord::ref_phi,
                           &TimeSeriesRecord::s_phi, thresholds.eps_att);
  out.theta = summarize_axis(window, &TimeSeriesRecord::theta, &TimeSeriesRecord::ref_theta,
                             &TimeSeriesRecord::s_theta, thresholds.eps_att);
  out.psi = summarize_axis(window, &TimeSeriesRecord::psi, &TimeSeriesRecord::ref_psi,
                           &TimeSeriesRecord::s_psi, thresholds.eps_att);

  const TimeSeriesRecord& last = *window.back();
  out.final_m_hat = last.m_hat;
  out.final_mass_error = std::abs(last.m_true - last.m_hat);

  for (const auto* r : window) {
    out.tilt_guard_count += r->flag_tilt_guard ? 1 : 0;
    out.saturated_count += r->flag_saturated ? 1 : 0;
    out.infeasible_count += r->flag_infeasible ? 1 : 0;
  }
  out.wall_clock_seconds = log.wall_clock_seconds;
  return out;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string axis_json(const char* name, const AxisSummary& a) {
  std::string out = std::string("  \"") + name + "\": {\n";
  out += "    \"rms_error\": " + fmt(a.rms_error) + ",\n";
  out += "    \"convergence_time\": ";
  out += a.convergence_time ? fmt(*a.convergence_time) : std::string("\"not converged\"");
  out += ",\n    \"max_surface_after_convergence\": " + fmt(a.max_surface_after_convergence);
  out += "\n  }";
  return out;
}

}  // namespace

std::string summary_to_json(const RunSummary& s) {
  std::string out = "{\n";
  out += axis_json("z", s.z) + ",\n";
  out += axis_json("phi", s.phi) + ",\n";
  out += axis_json("theta", s.theta) + ",\n";
  out += axis_json("psi", s.psi) + ",\n";
  out += "  \"final_m_hat\": " + fmt(s.final_m_hat) + ",\n";
  out += "  \"final_mass_error\": " + fmt(s.final_mass_error) + ",\n";
  out += "  \"tilt_guard_count\": " + std::to_string(s.tilt_guard_count) + ",\n";
  out += "  \"saturated_count\": " + std::to_string(s.saturated_count) + ",\n";
  out += "  \"infeasible_count\": " + std::to_string(s.infeasible_count) + ",\n";
  out += "  \"wall_clock_seconds\": " + fmt(s.wall_clock_seconds) + "\n";
  out += "}\n";
  return out;
}

}  // namespace smcquad
