#include "sbp/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace sbp {

namespace {

std::string num6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::string solution_string(const Vector& v) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) os << " ";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v(i));
    os << buf;
  }
  os << ")";
  return os.str();
}

void emit_csv(const std::vector<ReportRow>& rows, std::ostream& out) {
  out << "threshold,eta_base,algorithm,anchor,solution,upper_value,lower_value,"
         "distance,iterations,cpu_time_sec\n";
  for (const ReportRow& r : rows) {
    out << num6(r.threshold_eps) << ',' << num6(r.eta_base) << ',' << r.algorithm
        << ',' << '"' << r.anchor_label << '"' << ',' << '"'
        << solution_string(r.solution) << '"'
        << ',' << num6(r.upper_value) << ',' << num6(r.lower_value) << ','
        << (std::isnan(r.distance) ? "" : num6(r.distance)) << ','
        << r.outer_iterations << ',' << num6(r.wall_time_sec) << '\n';
  }
}

void emit_markdown(const std::vector<ReportRow>& rows, std::ostream& out) {
  out << "| threshold | eta_base | algorithm | anchor | solution | upper value | "
         "lower value | distance | iterations | cpu time (s) |\n";
  out << "|---|---|---|---|---|---|---|---|---|---|\n";
  for (const ReportRow& r : rows) {
    out << "| " << num6(r.threshold_eps) << " | " << num6(r.eta_base) << " | "
        << r.algorithm << " | " << r.anchor_label << " | " << solution_string(r.solution)
        << " | " << num6(r.upper_value) << " | " << num6(r.lower_value) << " | "
        << (std::isnan(r.distance) ? "" : num6(r.distance)) << " | "
        << r.outer_iterations << " | " << num6(r.wall_time_sec) << " |\n";
  }
}

void emit_json(const std::vector<ReportRow>& rows, std::ostream& out) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const ReportRow& r : rows) {
    nlohmann::ordered_json j;
    j["threshold"] = num6(r.threshold_eps);
    j["eta_base"] = num6(r.eta_base);
    j["algorithm"] = r.algorithm;
    j["anchor"] = r.anchor_label;
    nlohmann::ordered_json sol = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < r.solution.size(); ++i) sol.push_back(num6(r.solution(i)));
    j["solution"] = sol;
    j["upper_value"] = num6(r.upper_value);
    j["lower_value"] = num6(r.lower_value);
    if (!std::isnan(r.distance)) j["distance"] = num6(r.distance);
    j["iterations"] = r.outer_iterations;
    j["cpu_time_sec"] = num6(r.wall_time_sec);
    arr.push_back(std::move(j));
  }
  out << arr.dump(2) << '\n';
}

}  // namespace

ReportFormat parse_report_format(const std::string& name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  if (name == "markdown" || name == "md") return ReportFormat::Markdown;
  throw ValidationError("format", "expected csv, json or markdown");
}

void emit_report(const std::vector<ReportRow>& rows, ReportFormat format,
                 std::ostream& out) {
  if (rows.empty()) throw IoError("no rows to report");
  switch (format) {
    case ReportFormat::Csv: emit_csv(rows, out); break;
    case ReportFormat::Json: emit_json(rows, out); break;
    case ReportFormat::Markdown: emit_markdown(rows, out); break;
  }
}

void emit_report(const std::vector<ReportRow>& rows, ReportFormat format,
                 const std::filesystem::path& path) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    emit_report(rows, format, out);
    if (!out.good()) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("rename failed: " + ec.message());
}

}  // namespace sbp
