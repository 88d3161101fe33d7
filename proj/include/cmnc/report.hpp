#pragma once

// JSON / CSV / text serialization of certification reports and the
// constants audit. Real numbers are written as decimal strings ("%.17g"),
// which read back to the same double.

#include <string>
#include <vector>

#include "cmnc/certify.hpp"

namespace cmnc {

enum class Format { json, csv, text };

// Throws invalid_argument.
Format parse_format(const std::string& s);

std::string format_double(double v);

// JSON: {"reports": [...]} plus "timestamp" when requested; CSV: a header
// row then one row per report; text: one line per report.
std::string serialize_reports(const std::vector<CertReport>& reports, Format f, bool timestamp = false);

// Inverse of the JSON form. Throws invalid_argument on malformed input.
std::vector<CertReport> parse_reports_json(const std::string& text);

std::string serialize_audit(const ConstantsAudit& audit, Format f, bool timestamp = false);

std::string csv_header();
std::string csv_row(const CertReport& r);

// UTC, ISO 8601.
std::string utc_timestamp();

}  // namespace cmnc
