#include "sharpfw/trace_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace sharpfw {
namespace {

void put_optional(std::string& line, double v) {
  if (std::isfinite(v)) line += format_double(v);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& field, std::size_t row, const char* column) {
  double v = 0.0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last)
    throw InvalidArgument("trace csv: row " + std::to_string(row) + ": bad " + column + " '" + field + "'");
  return v;
}

std::optional<double> parse_optional(const std::string& field, std::size_t row, const char* column) {
  if (field.empty()) return std::nullopt;
  return parse_double(field, row, column);
}

nlohmann::json nullable(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_trace_csv(const Trace& trace, std::ostream& out) {
  out << kTraceHeader << '\n';
  std::string line;
  for (const auto& r : trace.records) {
    line.clear();
    line += std::to_string(r.t);
    line += ',';
    put_optional(line, r.F);
    line += ',';
    line += format_double(r.g);
    line += ',';
    line += format_double(r.d);
    line += ',';
    line += format_double(r.gamma);
    line += ',';
    if (r.delta) line += format_double(*r.delta);
    line += ',';
    put_optional(line, r.h);
    line += '\n';
    out << line;
  }
}

void write_trace_csv(const Trace& trace, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot open " + path.string() + " for writing");
  write_trace_csv(trace, out);
}

std::vector<TraceRow> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("trace csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTraceHeader) throw InvalidArgument("trace csv: unexpected header '" + line + "'");
  std::vector<TraceRow> rows;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto f = split(line);
    if (f.size() != 7) throw InvalidArgument("trace csv: row " + std::to_string(row) + " has " +
                                             std::to_string(f.size()) + " fields, expected 7");
    TraceRow r;
    const double t = parse_double(f[0], row, "t");
    if (t < 0.0 || t != std::floor(t)) throw InvalidArgument("trace csv: row " + std::to_string(row) + ": bad t");
    r.t = static_cast<long>(t);
    r.F = parse_optional(f[1], row, "F");
    r.g = parse_double(f[2], row, "g");
    r.d = parse_double(f[3], row, "d");
    r.gamma = parse_double(f[4], row, "gamma");
    r.delta = parse_optional(f[5], row, "delta");
    r.h = parse_optional(f[6], row, "h");
    if (!rows.empty() && r.t <= rows.back().t)
      throw InvalidArgument("trace csv: row " + std::to_string(row) + ": t not strictly increasing");
    rows.push_back(r);
  }
  return rows;
}

std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  return read_trace_csv(in);
}

GapSeries gap_series(const std::vector<TraceRow>& rows) {
  GapSeries s;
  for (const auto& r : rows) {
    s.t.push_back(static_cast<double>(r.t));
    s.F.push_back(r.F.value_or(std::numeric_limits<double>::quiet_NaN()));
  }
  return s;
}

nlohmann::json trace_summary(const Trace& trace) {
  const auto& m = trace.meta;
  const auto& c = trace.checks;
  nlohmann::json doc;
  doc["set"] = m.set;
  doc["objective"] = m.objective;
  doc["rule"] = m.rule;
  doc["seed"] = m.seed;
  doc["L"] = m.L;
  doc["D"] = m.D;
  doc["tolerances"] = {{"line_search", m.line_search_tol},
                       {"feasibility", m.feasibility_tol},
                       {"assertion", m.assertion_tol}};
  doc["f_star"] = m.f_star ? nlohmann::json(*m.f_star) : nlohmann::json(nullptr);
  doc["f_star_provenance"] = m.f_star_provenance;
  doc["h_offset"] = trace.offset;
  doc["t_final"] = m.t_final;
  doc["stop_reason"] = m.stop_reason;
  doc["records"] = trace.records.size();
  doc["assertions"] = {{"ok", c.ok()},
                       {"steps_checked", c.steps_checked},
                       {"progress", c.progress},
                       {"half_min", c.half_min},
                       {"envelope", c.envelope},
                       {"monotone", c.monotone},
                       {"feasibility", c.feasibility},
                       {"first_violation", c.first_violation},
                       {"first_violation_kind", c.first_violation_kind}};
  if (!trace.records.empty()) {
    const auto& last = trace.records.back();
    doc["final"] = {{"t", last.t},
                    {"F", nullable(last.F)},
                    {"g", last.g},
                    {"d", last.d},
                    {"delta", last.delta ? nlohmann::json(*last.delta) : nlohmann::json(nullptr)},
                    {"x", std::vector<double>(last.x.data(), last.x.data() + last.x.size())}};
  }
  return doc;
}

void write_json(const nlohmann::json& doc, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot open " + path.string() + " for writing");
  out << doc.dump(2) << '\n';
}

}  // namespace sharpfw
