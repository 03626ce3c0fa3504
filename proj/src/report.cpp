#include "asymrep/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "asymrep/error.hpp"

namespace asymrep {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::info: return "info";
  }
  return "info";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "pass") return Verdict::pass;
  if (s == "fail") return Verdict::fail;
  if (s == "info") return Verdict::info;
  throw DomainError("unknown verdict '" + s + "'");
}

OutputFormat format_from_string(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw DomainError("unknown output format '" + s + "' (expected csv or json)");
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

template <class T>
std::string cell(const std::optional<T>& v) {
  if (!v) return {};
  if constexpr (std::is_same_v<T, double>)
    return fmt_double(*v);
  else
    return std::to_string(*v);
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

using nlohmann::ordered_json;

template <class T>
ordered_json opt_json(const std::optional<T>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

template <class T>
std::optional<T> opt_from(const ordered_json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<ReportRow>& rows) {
  os << "experiment,param.n,param.m,param.K,param.M,param.b,value,bound,verdict\n";
  for (const auto& r : rows)
    os << csv_quote(r.experiment) << ',' << cell(r.n) << ',' << cell(r.m) << ',' << cell(r.K) << ','
       << cell(r.M) << ',' << cell(r.b) << ',' << fmt_double(r.value) << ',' << cell(r.bound) << ','
       << to_string(r.verdict) << '\n';
}

void write_json(std::ostream& os, const std::vector<ReportRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    if (!std::isfinite(r.value)) throw NumericalError("report value is not finite");
    ordered_json o;
    o["experiment"] = r.experiment;
    o["param.n"] = opt_json(r.n);
    o["param.m"] = opt_json(r.m);
    o["param.K"] = opt_json(r.K);
    o["param.M"] = opt_json(r.M);
    o["param.b"] = opt_json(r.b);
    o["value"] = r.value;
    o["bound"] = opt_json(r.bound);
    o["verdict"] = to_string(r.verdict);
    arr.push_back(std::move(o));
  }
  os << arr.dump(2) << '\n';
}

std::vector<ReportRow> parse_json(const std::string& text) {
  ordered_json arr;
  try {
    arr = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("report JSON: ") + e.what());
  }
  if (!arr.is_array()) throw Error("report JSON must be an array");
  std::vector<ReportRow> rows;
  for (const auto& o : arr) {
    ReportRow r;
    r.experiment = o.at("experiment").get<std::string>();
    r.n = opt_from<int>(o, "param.n");
    r.m = opt_from<int>(o, "param.m");
    r.K = opt_from<int>(o, "param.K");
    r.M = opt_from<int>(o, "param.M");
    r.b = opt_from<int>(o, "param.b");
    r.value = o.at("value").get<double>();
    r.bound = opt_from<double>(o, "bound");
    r.verdict = verdict_from_string(o.at("verdict").get<std::string>());
    rows.push_back(std::move(r));
  }
  return rows;
}

void emit(std::ostream& os, const std::vector<ReportRow>& rows, OutputFormat f) {
  if (f == OutputFormat::csv)
    write_csv(os, rows);
  else
    write_json(os, rows);
}

void emit_to_file(const std::string& path, const std::vector<ReportRow>& rows, OutputFormat f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  emit(out, rows, f);
  out.flush();
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace asymrep
