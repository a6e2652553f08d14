#include "smcquad/logging.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "smcquad/errors.hpp"

namespace smcquad {

namespace {

struct DoubleColumn {
  const char* name;
  double TimeSeriesRecord::* field;
};

struct FlagColumn {
  const char* name;
  bool TimeSeriesRecord::* field;
};

// Column order is the file format; append-only.
constexpr DoubleColumn kDoubleColumns[] = {
    {"time", &TimeSeriesRecord::time},
    {"x", &TimeSeriesRecord::x},
    {"y", &TimeSeriesRecord::y},
    {"z", &TimeSeriesRecord::z},
    {"phi", &TimeSeriesRecord::phi},
    {"theta", &TimeSeriesRecord::theta},
    {"psi", &TimeSeriesRecord::psi},
    {"x_dot", &TimeSeriesRecord::x_dot},
    {"y_dot", &TimeSeriesRecord::y_dot},
    {"z_dot", &TimeSeriesRecord::z_dot},
    {"phi_dot", &TimeSeriesRecord::phi_dot},
    {"theta_dot", &TimeSeriesRecord::theta_dot},
    {"psi_dot", &TimeSeriesRecord::psi_dot},
    {"meas_z", &TimeSeriesRecord::meas_z},
    {"meas_phi", &TimeSeriesRecord::meas_phi},
    {"meas_theta", &TimeSeriesRecord::meas_theta},
    {"meas_psi", &TimeSeriesRecord::meas_psi},
    {"ref_z", &TimeSeriesRecord::ref_z},
    {"ref_phi", &TimeSeriesRecord::ref_phi},
    {"ref_theta", &TimeSeriesRecord::ref_theta},
    {"ref_psi", &TimeSeriesRecord::ref_psi},
    {"z_hat", &TimeSeriesRecord::z_hat},
    {"z_dot_hat", &TimeSeriesRecord::z_dot_hat},
    {"phi_hat", &TimeSeriesRecord::phi_hat},
    {"phi_dot_hat", &TimeSeriesRecord::phi_dot_hat},
    {"theta_hat", &TimeSeriesRecord::theta_hat},
    {"theta_dot_hat", &TimeSeriesRecord::theta_dot_hat},
    {"psi_hat", &TimeSeriesRecord::psi_hat},
    {"psi_dot_hat", &TimeSeriesRecord::psi_dot_hat},
    {"s_z", &TimeSeriesRecord::s_z},
    {"s_phi", &TimeSeriesRecord::s_phi},
    {"s_theta", &TimeSeriesRecord::s_theta},
    {"s_psi", &TimeSeriesRecord::s_psi},
    {"u1", &TimeSeriesRecord::u1},
    {"u2", &TimeSeriesRecord::u2},
    {"u3", &TimeSeriesRecord::u3},
    {"u4", &TimeSeriesRecord::u4},
    {"w1", &TimeSeriesRecord::w1},
    {"w2", &TimeSeriesRecord::w2},
    {"w3", &TimeSeriesRecord::w3},
    {"w4", &TimeSeriesRecord::w4},
    {"m_hat", &TimeSeriesRecord::m_hat},
    {"m_true", &TimeSeriesRecord::m_true},
    {"lyap_v1", &TimeSeriesRecord::lyap_v1},
    {"lyap_v2", &TimeSeriesRecord::lyap_v2},
    {"obs_z_dx1", &TimeSeriesRecord::obs_z_dx1},
    {"obs_z_dx2", &TimeSeriesRecord::obs_z_dx2},
};

constexpr FlagColumn kFlagColumns[] = {
    {"flag_tilt_guard", &TimeSeriesRecord::flag_tilt_guard},
    {"flag_saturated", &TimeSeriesRecord::flag_saturated},
    {"flag_infeasible", &TimeSeriesRecord::flag_infeasible},
};

void append_double(std::string& out, double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  out += buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

std::string csv_header() {
  std::string header;
  for (const auto& c : kDoubleColumns) {
    if (!header.empty()) header += ',';
    header += c.name;
  }
  for (const auto& c : kFlagColumns) {
    header += ',';
    header += c.name;
  }
  return header;
}

std::string log_to_csv(const TimeSeriesLog& log) {
  std::string out = csv_header();
  out += '\n';
  for (const auto& r : log.records) {
    bool first = true;
    for (const auto& c : kDoubleColumns) {
      if (!first) out += ',';
      first = false;
      append_double(out, r.*(c.field));
    }
    for (const auto& c : kFlagColumns) {
      out += ',';
      out += (r.*(c.field)) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

void write_log(const TimeSeriesLog& log, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw IoError("write_log: cannot open " + path.string() + " for writing");
  }
  const std::string text = log_to_csv(log);
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!file) {
    throw IoError("write_log: failed while writing " + path.string());
  }
}

TimeSeriesLog log_from_csv(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  if (!std::getline(ss, line)) {
    throw ParseError("log: empty input");
  }
  if (line != csv_header()) {
    throw ParseError("log: header does not match the documented column list");
  }

  constexpr std::size_t n_doubles = std::size(kDoubleColumns);
  constexpr std::size_t n_flags = std::size(kFlagColumns);

  TimeSeriesLog log;
  std::size_t line_no = 1;
  while (std::getline(ss, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> fields = split(line, ',');
    if (fields.size() != n_doubles + n_flags) {
      throw ParseError("log: line " + std::to_string(line_no) + " has " +
                       std::to_string(fields.size()) + " fields, expected " +
                       std::to_string(n_doubles + n_flags));
    }
    TimeSeriesRecord r;
    for (std::size_t i = 0; i < n_doubles; ++i) {
      try {
        r.*(kDoubleColumns[i].field) = std::stod(fields[i]);
      } catch (const std::exception&) {
        throw ParseError("log: line " + std::to_string(line_no) + ", column " +
                         kDoubleColumns[i].name + ": not a number: " + fields[i]);
      }
    }
    for (std::size_t i = 0; i < n_flags; ++i) {
      const std::string& f = fields[n_doubles + i];
      if (f != "0" && f != "1") {
        throw ParseError("log: line " + std::to_string(line_no) + ", column " +
                         kFlagColumns[i].name + ": flag must be 0 or 1, got " + f);
      }
      r.*(kFlagColumns[i].field) = f == "1";
    }
    log.records.push_back(r);
  }
  return log;
}

TimeSeriesLog read_log(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw IoError("read_log: cannot open " + path.string());
  }
  std::stringstream buffer;
  buffer << file.rdbuf();
  return log_from_csv(buffer.str());
}

namespace {

const std::map<std::string, std::vector<DoubleColumn>>& figure_layouts() {
  // Column sets mirror the report plots: tracking + control signal per
  // controlled axis, rotor speeds, surfaces, mass estimation, and the
  // altitude observer under noise.
  static const std::map<std::string, std::vector<DoubleColumn>> layouts = {
      {"fig2",
       {{"time", &TimeSeriesRecord::time},
        {"z", &TimeSeriesRecord::z},
        {"ref_z", &TimeSeriesRecord::ref_z},
        {"u1", &TimeSeriesRecord::u1}}},
      {"fig3",
       {{"time", &TimeSeriesRecord::time},
        {"theta", &TimeSeriesRecord::theta},
        {"ref_theta", &TimeSeriesRecord::ref_theta},
        {"u3", &TimeSeriesRecord::u3}}},
      {"fig4",
       {{"time", &TimeSeriesRecord::time},
        {"phi", &TimeSeriesRecord::phi},
        {"ref_phi", &TimeSeriesRecord::ref_phi},
        {"u2", &TimeSeriesRecord::u2}}},
      {"fig5",
       {{"time", &TimeSeriesRecord::time},
        {"w1", &TimeSeriesRecord::w1},
        {"w2", &TimeSeriesRecord::w2},
        {"w3", &TimeSeriesRecord::w3},
        {"w4", &TimeSeriesRecord::w4}}},
      {"fig6", {{"time", &TimeSeriesRecord::time}, {"s_z", &TimeSeriesRecord::s_z}}},
      {"fig7",
       {{"time", &TimeSeriesRecord::time},
        {"s_theta", &TimeSeriesRecord::s_theta},
        {"s_phi", &TimeSeriesRecord::s_phi}}},
      {"fig8",
       {{"time", &TimeSeriesRecord::time},
        {"m_hat", &TimeSeriesRecord::m_hat},
        {"m_true", &TimeSeriesRecord::m_true},
        {"s_z", &TimeSeriesRecord::s_z}}},
      {"fig9",
       {{"time", &TimeSeriesRecord::time},
        {"m_hat", &TimeSeriesRecord::m_hat},
        {"m_true", &TimeSeriesRecord::m_true},
        {"s_z", &TimeSeriesRecord::s_z}}},
      {"fig10",
       {{"time", &TimeSeriesRecord::time},
        {"z", &TimeSeriesRecord::z},
        {"meas_z", &TimeSeriesRecord::meas_z},
        {"z_hat", &TimeSeriesRecord::z_hat},
        {"z_dot", &TimeSeriesRecord::z_dot},
        {"z_dot_hat", &TimeSeriesRecord::z_dot_hat}}},
  };
  return layouts;
}

}  // namespace

const std::vector<std::string>& known_figure_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [id, _] : figure_layouts()) out.push_back(id);
    return out;
  }();
  return ids;
}

void write_figure_data(const TimeSeriesLog& log, const std::string& figure_id,
                       const std::filesystem::path& path) {
  const auto& layouts = figure_layouts();
  const auto it = layouts.find(figure_id);
  if (it == layouts.end()) {
    throw UnknownFigureError("unknown figure id '" + figure_id + "' (expected fig2..fig10)");
  }

  std::string out = "#";
  for (const auto& c : it->second) {
    out += ' ';
    out += c.name;
  }
  out += '\n';
  for (const auto& r : log.records) {
    bool first = true;
    for (const auto& c : it->second) {
      if (!first) out += ' ';
      first = false;
      append_double(out, r.*(c.field));
    }
    out += '\n';
  }

  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw IoError("write_figure_data: cannot open " + path.string() + " for writing");
  }
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) {
    throw IoError("write_figure_data: failed while writing " + path.string());
  }
}

}  // namespace smcquad
