#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "sbp/report.hpp"

namespace {

using sbp::ReportFormat;
using sbp::ReportRow;
using sbp::Vector;

ReportRow sample_row() {
  ReportRow r;
  r.threshold_eps = 1e-5;
  r.eta_base = 10.0;
  r.algorithm = "sbp";
  r.anchor_label = "5.1";
  r.solution = Vector(2);
  r.solution << -0.70710678, -0.70710678;
  r.upper_value = -2.414214;
  r.lower_value = 1e-11;
  r.outer_iterations = 11;
  r.wall_time_sec = 0.0123;
  return r;
}

TEST(Report, CsvSingleRow) {
  std::ostringstream os;
  sbp::emit_report({sample_row()}, ReportFormat::Csv, os);
  std::string text = os.str();
  std::size_t lines = std::count(text.begin(), text.end(), '\n');
  EXPECT_EQ(lines, 2u);  // header + one row
  EXPECT_NE(text.find("threshold,eta_base"), std::string::npos);
  EXPECT_NE(text.find("-2.414214e+00"), std::string::npos);
}

TEST(Report, DeterministicBytes) {
  std::vector<ReportRow> rows{sample_row(), sample_row()};
  rows[1].eta_base = 100.0;
  std::ostringstream a, b;
  sbp::emit_report(rows, ReportFormat::Csv, a);
  sbp::emit_report(rows, ReportFormat::Csv, b);
  EXPECT_EQ(a.str(), b.str());
  std::ostringstream c, d;
  sbp::emit_report(rows, ReportFormat::Json, c);
  sbp::emit_report(rows, ReportFormat::Json, d);
  EXPECT_EQ(c.str(), d.str());
}

TEST(Report, MarkdownShape) {
  std::ostringstream os;
  sbp::emit_report({sample_row()}, ReportFormat::Markdown, os);
  std::string text = os.str();
  EXPECT_EQ(text.rfind("| threshold", 0), 0u);
  EXPECT_NE(text.find("|---"), std::string::npos);
  std::size_t lines = std::count(text.begin(), text.end(), '\n');
  EXPECT_EQ(lines, 3u);
}

TEST(Report, JsonParsesBack) {
  std::ostringstream os;
  sbp::emit_report({sample_row()}, ReportFormat::Json, os);
  nlohmann::json j = nlohmann::json::parse(os.str());
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["iterations"], 11);
  EXPECT_EQ(j[0]["algorithm"], "sbp");
}

TEST(Report, EmptyRowsRejected) {
  std::ostringstream os;
  EXPECT_THROW(sbp::emit_report({}, ReportFormat::Csv, os), sbp::IoError);
}

TEST(Report, AtomicFileWrite) {
  std::filesystem::path path =
      std::filesystem::temp_directory_path() / "sbp_report_test.csv";
  sbp::emit_report({sample_row()}, ReportFormat::Csv, path);
  std::ifstream in(path);
  ASSERT_TRUE(in.good());
  std::string file_text((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
  std::ostringstream os;
  sbp::emit_report({sample_row()}, ReportFormat::Csv, os);
  EXPECT_EQ(file_text, os.str());
  EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  std::filesystem::remove(path);
}

TEST(Report, FormatNames) {
  EXPECT_EQ(sbp::parse_report_format("csv"), ReportFormat::Csv);
  EXPECT_EQ(sbp::parse_report_format("json"), ReportFormat::Json);
  EXPECT_EQ(sbp::parse_report_format("markdown"), ReportFormat::Markdown);
  EXPECT_THROW(sbp::parse_report_format("yaml"), sbp::ValidationError);
}

}  // namespace
