#pragma once

// CSV ingestion, deterministic JSON emission and the subcopula dump formats.

#include "subdep/empirical.hpp"
#include "subdep/subcopula.hpp"

#include "json.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace subdep::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportVersion = "1.0";

/// Bad user input: unreadable file, unknown column, malformed numbers. Exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Internal numerical failure. Exit code 3.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rectangular numeric table; missing entries are NaN.
struct Dataset {
  std::vector<std::string> column_names;
  std::vector<std::vector<double>> columns;
  std::string na_token = "NA";

  std::size_t rows() const noexcept { return columns.empty() ? 0 : columns.front().size(); }
  /// Throws InputError for an unknown name.
  const std::vector<double>& column(std::string_view name) const;
};

/// Comma separated, header row first. Empty fields and `na_token` become NaN.
Dataset read_csv(std::istream& in, const std::string& na_token = "NA");
Dataset read_csv_file(const std::string& path, const std::string& na_token = "NA");

/// 17 significant digits, '.' decimal point
/// regardless of locale.
std::string format_double(double x);

/// Serializes with fixed key order (insertion order) and format_double for
/// every floating value, so equal inputs give byte-identical text.
std::string dump_json(const Json& j, int indent = 2);

/// "p/q" in lowest terms, or "p" when q = 1.
std::string rational_string(const Rational& r);

/// Accepts "p/q", integers and plain decimals ("-0.125", "3e-2").
Rational parse_rational(std::string_view text);

struct ReportDocument {
  std::string version = kReportVersion;
  std::string command;
  Json parameters = Json::object();
  Json results = Json::object();
  std::vector<std::string> warnings;

  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

Json to_json(const ReportDocument& doc);
/// Inverse of to_json; throws InputError on schema mismatch.
ReportDocument report_from_json(const Json& j);

Json to_json(const DependenceReport& rep);
Json to_json(const ValidationReport& rep);

/// Exact subcopulas keep integer numerators plus the common denominator;
/// floating ones carry level and value arrays of doubles.
Json to_json(const Subcopula& s);
Subcopula subcopula_from_json(const Json& j);

/// Three blocks headed "# d1", "# d2", "# values". Exact values are written
/// as fractions; a file whose tokens are all integers or fractions reads back
/// as exact, anything else as floating.
void write_subcopula_csv(std::ostream& out, const Subcopula& s);
Subcopula read_subcopula_csv(std::istream& in);

/// Reads either dump format, chosen by the first non-blank character.
Subcopula read_subcopula_file(const std::string& path);

}  // namespace subdep::io
