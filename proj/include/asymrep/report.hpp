#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace asymrep {

enum class Verdict { pass, fail, info };

const char* to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct ReportRow {
  std::string experiment;
  std::optional<int> n, m, K, M, b;
  double value = 0.0;
  std::optional<double> bound;
  Verdict verdict = Verdict::info;

  bool operator==(const ReportRow&) const = default;
};

enum class OutputFormat { csv, json };

OutputFormat format_from_string(const std::string& s);

/// Header `experiment,param.n,param.m,param.K,param.M,param.b,value,bound,verdict`,
/// floats with 12 significant digits, empty cells for missing values.
void write_csv(std::ostream& os, const std::vector<ReportRow>& rows);
/// Array of objects with the CSV field names; null for missing values.
void write_json(std::ostream& os, const std::vector<ReportRow>& rows);
std::vector<ReportRow> parse_json(const std::string& text);

void emit(std::ostream& os, const std::vector<ReportRow>& rows, OutputFormat f);
/// Throws Error if the file cannot be written.
void emit_to_file(const std::string& path, const std::vector<ReportRow>& rows, OutputFormat f);

}  // namespace asymrep
