#pragma once

#include "sharpfw/analysis.hpp"
#include "sharpfw/solver.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sharpfw {

/// Column header of trace files.
inline constexpr const char* kTraceHeader = "t,F,g,d,gamma,delta,h";

/// One parsed CSV row. Empty fields come back as std::nullopt.
struct TraceRow {
  long t = 0;
  std::optional<double> F;
  double g = 0.0;
  double d = 0.0;
  double gamma = 0.0;
  std::optional<double> delta;
  std::optional<double> h;
};

/// Shortest representation that parses back to the same double.
std::string format_double(double v);

void write_trace_csv(const Trace& trace, std::ostream& out);
void write_trace_csv(const Trace& trace, const std::filesystem::path& path);

/// Throws InvalidArgument on a wrong header or malformed row.
std::vector<TraceRow> read_trace_csv(std::istream& in);
std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path);

/// (t, F) pairs of parsed rows; empty F fields become NaN.
GapSeries gap_series(const std::vector<TraceRow>& rows);

/// Metadata, assertion counters and final state of a run.
nlohmann::json trace_summary(const Trace& trace);

void write_json(const nlohmann::json& doc, const std::filesystem::path& path);

}  // namespace sharpfw
