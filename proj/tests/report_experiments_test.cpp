#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "asymrep/error.hpp"
#include "asymrep/experiments.hpp"
#include "asymrep/report.hpp"

using namespace asymrep;

namespace {

std::vector<ReportRow> sample_rows() {
  ReportRow a;
  a.experiment = "index";
  a.K = 20;
  a.M = 5;
  a.b = 3;
  a.value = 1.0;
  a.bound = 1.0;
  a.verdict = Verdict::pass;
  ReportRow b;
  b.experiment = "defect";
  b.m = 8;
  b.value = 0.76536686473017956;
  b.verdict = Verdict::info;
  ReportRow c;
  c.experiment = "odd,name";
  c.n = -3;
  c.value = 1e-300;
  c.bound = 2.5;
  c.verdict = Verdict::fail;
  return {a, b, c};
}

ExperimentConfig config(const std::string& name) {
  ExperimentConfig c;
  c.experiment = name;
  return c;
}

}  // namespace

TEST(Report, VerdictAndFormatStrings) {
  for (auto v : {Verdict::pass, Verdict::fail, Verdict::info}) EXPECT_EQ(verdict_from_string(to_string(v)), v);
  EXPECT_THROW(verdict_from_string("ok"), DomainError);
  EXPECT_EQ(format_from_string("csv"), OutputFormat::csv);
  EXPECT_EQ(format_from_string("json"), OutputFormat::json);
  EXPECT_THROW(format_from_string("xml"), DomainError);
}

TEST(Report, CsvLayout) {
  std::ostringstream os;
  write_csv(os, sample_rows());
  EXPECT_EQ(os.str(),
            "experiment,param.n,param.m,param.K,param.M,param.b,value,bound,verdict\n"
            "index,,,20,5,3,1,1,pass\n"
            "defect,,8,,,,0.76536686473,,info\n"
            "\"odd,name\",-3,,,,,1e-300,2.5,fail\n");
}

TEST(Report, EmptyCsvIsHeaderOnly) {
  std::ostringstream os;
  write_csv(os, {});
  EXPECT_EQ(os.str(), "experiment,param.n,param.m,param.K,param.M,param.b,value,bound,verdict\n");
}

TEST(Report, JsonRoundTrip) {
  std::ostringstream os;
  write_json(os, sample_rows());
  EXPECT_EQ(parse_json(os.str()), sample_rows());
  EXPECT_NE(os.str().find("\"param.n\": null"), std::string::npos);
  std::ostringstream empty;
  write_json(empty, {});
  EXPECT_TRUE(parse_json(empty.str()).empty());
  EXPECT_THROW(parse_json("{"), Error);
  EXPECT_THROW(parse_json("{}"), Error);
}

TEST(Report, JsonRejectsNonFinite) {
  auto rows = sample_rows();
  rows[0].value = INFINITY;
  std::ostringstream os;
  EXPECT_THROW(write_json(os, rows), NumericalError);
}

TEST(Report, EmitToFile) {
  const auto path = std::filesystem::temp_directory_path() / "asymrep_report_test.json";
  emit_to_file(path.string(), sample_rows(), OutputFormat::json);
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(parse_json(buf.str()), sample_rows());
  std::filesystem::remove(path);
  EXPECT_THROW(emit_to_file("/nonexistent-dir/x/report.csv", sample_rows(), OutputFormat::csv), Error);
}

TEST(Sweep, Forms) {
  EXPECT_EQ(parse_sweep("m=2:16:*2").values, (std::vector<int>{2, 4, 8, 16}));
  EXPECT_EQ(parse_sweep("n=1:7:+3").values, (std::vector<int>{1, 4, 7}));
  EXPECT_EQ(parse_sweep("n=1:7:3").values, (std::vector<int>{1, 4, 7}));
  EXPECT_EQ(parse_sweep("n=3:5").values, (std::vector<int>{3, 4, 5}));
  auto s = parse_sweep("m=8,2,4,2");
  EXPECT_EQ(s.name, "m");
  EXPECT_EQ(s.values, (std::vector<int>{2, 4, 8}));
  EXPECT_EQ(parse_sweep("m=3:20:*2").values, (std::vector<int>{3, 6, 12}));
}

TEST(Sweep, Errors) {
  for (const char* bad : {"m", "=1,2", "m=", "m=a", "m=1:", "m=4:2", "m=1:8:*1", "m=0:8:*2", "m=1:8:0", "m=1:2:3:4",
                          "m=1,,2"})
    EXPECT_THROW(parse_sweep(bad), DomainError) << bad;
}

TEST(Experiments, RegistryNames) {
  const auto& names = experiment_names();
  EXPECT_EQ(names.size(), 14u);
  EXPECT_THROW(run_experiment(config("nope")), DomainError);
}

TEST(Experiments, IndexRows) {
  auto rows = run_experiment(config("index"));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].value, 1.0);
  EXPECT_EQ(rows[0].verdict, Verdict::pass);
  EXPECT_EQ(rows[0].K, 20);
  EXPECT_EQ(exit_code(rows), 0);
  auto f = run_experiment(config("index-F"));
  EXPECT_EQ(f[0].value, 0.0);
}

TEST(Experiments, VoiculescuDefectSweep) {
  auto c = config("voiculescu-defect");
  c.sweep = parse_sweep("m=2:16:*2");
  auto rows = run_experiment(c);
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].m, 2 << i);
    EXPECT_EQ(rows[i].verdict, Verdict::pass);
  }
  c.sweep = parse_sweep("n=2,4");
  EXPECT_THROW(run_experiment(c), DomainError);
}

TEST(Experiments, Deterministic) {
  for (const char* name : {"trivialization", "quasicentral", "cocycle"})
    EXPECT_EQ(run_experiment(config(name)), run_experiment(config(name))) << name;
}

TEST(Experiments, ConfigValidation) {
  auto c = config("defect");
  c.rep = "other";
  EXPECT_THROW(run_experiment(c), DomainError);
  c.rep = "fourier";
  c.presentation = "<a,b|[a,b]>";
  EXPECT_THROW(run_experiment(c), DomainError);
  c.presentation = "<x|>";
  EXPECT_NO_THROW(run_experiment(c));
  auto t = config("voiculescu-defect");
  t.tol = 0.0;
  EXPECT_THROW(run_experiment(t), DomainError);
  auto f = config("quasicentral");
  f.f = "cos";
  EXPECT_THROW(run_experiment(f), DomainError);
}

TEST(Experiments, ExitCodeReflectsFailures) {
  auto rows = sample_rows();
  EXPECT_EQ(exit_code(rows), 2);
  rows.pop_back();
  EXPECT_EQ(exit_code(rows), 0);
  EXPECT_EQ(exit_code({}), 0);
}

TEST(Experiments, RankStabAndCommutatorPass) {
  for (const char* name : {"rank-stab", "commutator", "shift-vs-translation", "quasicentral"})
    EXPECT_EQ(exit_code(run_experiment(config(name))), 0) << name;
}
