#pragma once

#include <filesystem>
#include <ostream>

#include "sbp/experiments.hpp"

namespace sbp {

enum class ReportFormat { Csv, Json, Markdown };

ReportFormat parse_report_format(const std::string& name);

/// Renders rows with fixed 6-significant-digit formatting; output is
/// byte-stable for fixed inputs. The timing column is informational only.
void emit_report(const std::vector<ReportRow>& rows, ReportFormat format,
                 std::ostream& out);

/// Writes atomically (temp file + rename). Throws IoError on failure or
/// when rows is empty.
void emit_report(const std::vector<ReportRow>& rows, ReportFormat format,
                 const std::filesystem::path& path);

}  // namespace sbp
