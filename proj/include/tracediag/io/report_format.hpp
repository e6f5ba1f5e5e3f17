#pragma once

#include "tracediag/lab/report.hpp"

#include <string>

namespace tracediag::io {

enum class ReportFormat { Text, Records };

/// Timing is left out unless asked for, so that output depends only on the inputs.
struct FormatOptions {
  ReportFormat format = ReportFormat::Text;
  bool timing = false;
};

/// Text: `key value` lines. Records: one JSON object per line, a summary record followed by one record
/// per trial (or sample).
std::string format_report(const lab::VerificationReport& report, const FormatOptions& options = {});
std::string format_report(const lab::PfaffianScan& scan, const FormatOptions& options = {});
std::string format_report(const lab::PolarizationReport& report, const FormatOptions& options = {});

}  // namespace tracediag::io
