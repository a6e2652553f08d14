#pragma once

#include <filesystem>
#include <string>

#include "smcquad/simulation.hpp"

namespace smcquad {

/// Comma-separated header naming every logged column, time first.
std::string csv_header();

/// Renders the log as CSV text: header line, one row per record, values
/// at 17 significant digits (lossless for doubles), flags as 0/1,
/// newline-terminated.
std::string log_to_csv(const TimeSeriesLog& log);

/// Writes log_to_csv(log) to `path`. Throws IoError with path context.
void write_log(const TimeSeriesLog& log, const std::filesystem::path& path);

/// Parses a CSV produced by write_log. The header must match csv_header()
/// exactly. Throws ParseError / IoError.
TimeSeriesLog read_log(const std::filesystem::path& path);
TimeSeriesLog log_from_csv(const std::string& text);

/// Writes the column set belonging to one of the predefined plot layouts
/// (`fig2` .. `fig10`) as whitespace-separated columns with a `#` header
/// line. Throws UnknownFigureError for anything else.
void write_figure_data(const TimeSeriesLog& log, const std::string& figure_id,
                       const std::filesystem::path& path);

/// The figure ids write_figure_data accepts.
const std::vector<std::string>& known_figure_ids();

}  // namespace smcquad
