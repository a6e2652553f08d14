#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "smcquad/acceptance.hpp"
#include "smcquad/errors.hpp"
#include "smcquad/logging.hpp"
#include "smcquad/scenario_json.hpp"
#include "smcquad/simulation.hpp"
#include "smcquad/summary.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitSuiteFailure = 3;

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("SMCQUAD_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  try {
    return std::stoull(raw);
  } catch (const std::exception&) {
    throw smcquad::ValidationError(std::string("SMCQUAD_SEED is not an integer: ") + raw);
  }
}

int cmd_run(const std::string& scenario_path, const std::string& out_dir,
            std::optional<std::uint64_t> seed_flag) {
  smcquad::Scenario scenario = smcquad::parse_scenario(scenario_path);
  if (const auto seed = env_seed()) scenario.seed = *seed;
  if (seed_flag) scenario.seed = *seed_flag;

  const smcquad::TimeSeriesLog log = smcquad::run_scenario(scenario);

  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  smcquad::write_log(log, dir / "log.csv");

  const smcquad::RunSummary summary = smcquad::summarize(log, smcquad::SummaryThresholds{});
  const std::string summary_json = smcquad::summary_to_json(summary);
  {
    std::FILE* f = std::fopen((dir / "summary.json").string().c_str(), "wb");
    if (f == nullptr) {
      throw smcquad::IoError("cannot write " + (dir / "summary.json").string());
    }
    std::fwrite(summary_json.data(), 1, summary_json.size(), f);
    std::fclose(f);
  }

  std::cout << "wrote " << (dir / "log.csv").string() << " (" << log.records.size()
            << " records, " << log.wall_clock_seconds << " s)\n";
  std::cout << summary_json;
  return kExitOk;
}

int cmd_summarize(const std::string& log_path, const smcquad::SummaryThresholds& thresholds) {
  const smcquad::TimeSeriesLog log = smcquad::read_log(log_path);
  std::cout << smcquad::summary_to_json(smcquad::summarize(log, thresholds));
  return kExitOk;
}

int cmd_figure(const std::string& log_path, const std::string& figure_id,
               std::string out_path) {
  const smcquad::TimeSeriesLog log = smcquad::read_log(log_path);
  if (out_path.empty()) out_path = figure_id + ".dat";
  smcquad::write_figure_data(log, figure_id, out_path);
  std::cout << "wrote " << out_path << "\n";
  return kExitOk;
}

int cmd_suite() {
  const auto results = smcquad::acceptance::run_all();
  bool all_passed = true;
  for (const auto& r : results) {
    all_passed = all_passed && r.passed;
    std::printf("[%s] criterion %2d: %s%s%s\n", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.detail.empty() ? "" : " -- ", r.detail.c_str());
  }
  return all_passed ? kExitOk : kExitSuiteFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive sliding-mode quadrotor simulation harness"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed_flag;
  auto* run = app.add_subcommand("run", "Simulate a scenario file and write log + summary");
  run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  run->add_option("--out", out_dir, "Output directory (default: out)");
  run->add_option("--seed", seed_flag, "Override the scenario seed (beats SMCQUAD_SEED)");

  std::string log_path;
  smcquad::SummaryThresholds thresholds;
  auto* summarize = app.add_subcommand("summarize", "Print metrics for an existing log");
  summarize->add_option("log", log_path, "CSV log produced by `run`")->required();
  summarize->add_option("--eps-z", thresholds.eps_z, "Altitude convergence band [m]");
  summarize->add_option("--eps-att", thresholds.eps_att, "Attitude convergence band [rad]");
  summarize->add_option("--warmup", thresholds.warmup, "Ignore records before this time [s]");

  std::string figure_log_path;
  std::string figure_id;
  std::string figure_out;
  auto* figure = app.add_subcommand("figure", "Extract plot columns from a log");
  figure->add_option("log", figure_log_path, "CSV log produced by `run`")->required();
  figure->add_option("--id", figure_id, "Figure id, fig2..fig10")->required();
  figure->add_option("--out", figure_out, "Output file (default: <id>.dat)");

  app.add_subcommand("suite", "Run the acceptance scenarios and print pass/fail lines");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(scenario_path, out_dir, seed_flag);
    if (summarize->parsed()) return cmd_summarize(log_path, thresholds);
    if (figure->parsed()) return cmd_figure(figure_log_path, figure_id, figure_out);
    return cmd_suite();
  } catch (const smcquad::AngleSingularityError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const smcquad::NonFiniteStateError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const smcquad::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const smcquad::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const smcquad::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
}
