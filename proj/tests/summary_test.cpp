#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "smcquad/errors.hpp"
#include "smcquad/summary.hpp"

using namespace smcquad;

namespace {

TimeSeriesLog flat_log(int rows, double e_z, double m_hat, double m_true) {
  TimeSeriesLog log;
  for (int i = 0; i < rows; ++i) {
    TimeSeriesRecord r;
    r.time = i * 0.1;
    r.z = e_z;  // references stay at zero
    r.m_hat = m_hat;
    r.m_true = m_true;
    log.records.push_back(r);
  }
  return log;
}

}  // namespace

TEST_CASE("equilibrium log summarizes to zero error and immediate convergence") {
  const TimeSeriesLog log = flat_log(11, 0.0, 0.486, 0.486);
  const RunSummary s = summarize(log, SummaryThresholds{});
  CHECK(s.z.rms_error == 0.0);
  REQUIRE(s.z.convergence_time.has_value());
  CHECK(*s.z.convergence_time == 0.0);
  CHECK(s.z.max_surface_after_convergence == 0.0);
  CHECK(s.final_mass_error == 0.0);
  CHECK(s.tilt_guard_count == 0);
}

TEST_CASE("constant offset never converges under a tight band") {
  const TimeSeriesLog log = flat_log(11, 0.1, 0.4, 0.486);
  const RunSummary s = summarize(log, SummaryThresholds{0.01, 0.005, 0.0});
  CHECK(s.z.rms_error == doctest::Approx(0.1).epsilon(1e-12));
  CHECK_FALSE(s.z.convergence_time.has_value());
  CHECK(s.final_mass_error == doctest::Approx(0.086).epsilon(1e-12));
}

TEST_CASE("convergence time is the start of the trailing in-band stretch") {
  TimeSeriesLog log = flat_log(11, 0.1, 0.486, 0.486);
  for (std::size_t i = 5; i < log.records.size(); ++i) log.records[i].z = 0.001;
  const RunSummary s = summarize(log, SummaryThresholds{0.01, 0.005, 0.0});
  REQUIRE(s.z.convergence_time.has_value());
  CHECK(*s.z.convergence_time == doctest::Approx(0.5));
}

TEST_CASE("warm-up window narrows the metrics") {
  TimeSeriesLog log = flat_log(11, 0.0, 0.486, 0.486);
  log.records[0].z = 100.0;  // excluded once warm-up passes it
  const RunSummary with_spike = summarize(log, SummaryThresholds{});
  CHECK(with_spike.z.rms_error > 1.0);
  const RunSummary after = summarize(log, SummaryThresholds{0.01, 0.005, 0.05});
  CHECK(after.z.rms_error == 0.0);
}

TEST_CASE("warm-up past the end of the log is an error") {
  const TimeSeriesLog log = flat_log(11, 0.0, 0.486, 0.486);
  CHECK_THROWS_AS(summarize(log, SummaryThresholds{0.01, 0.005, 100.0}), EmptyWindowError);
}

TEST_CASE("flag occurrences are counted") {
  TimeSeriesLog log = flat_log(10, 0.0, 0.486, 0.486);
  log.records[2].flag_saturated = true;
  log.records[3].flag_saturated = true;
  log.records[4].flag_infeasible = true;
  const RunSummary s = summarize(log, SummaryThresholds{});
  CHECK(s.saturated_count == 2);
  CHECK(s.infeasible_count == 1);
  CHECK(s.tilt_guard_count == 0);
}

TEST_CASE("summaries are a pure function of the log") {
  const TimeSeriesLog log = flat_log(20, 0.02, 0.45, 0.486);
  const SummaryThresholds th{0.01, 0.005, 0.3};
  CHECK(summary_to_json(summarize(log, th)) == summary_to_json(summarize(log, th)));
}
