#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cqnls/cli.hpp"
#include "cqnls/error.hpp"
#include "cqnls/report.hpp"

using namespace cqnls;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "cqnls");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string header_line(const std::string& csv) {
  std::istringstream is(csv);
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line[0] != '#') return line;
  }
  return {};
}

}  // namespace

TEST(ParseOmega, ValueAndRange) {
  bool range = true;
  EXPECT_EQ(parse_omega("2", &range), std::vector<double>{2.0});
  EXPECT_FALSE(range);
  const auto r = parse_omega("1:3:5", &range);
  EXPECT_TRUE(range);
  EXPECT_EQ(r, (std::vector<double>{1.0, 1.5, 2.0, 2.5, 3.0}));
  EXPECT_THROW(parse_omega("1:3"), ConfigError);
  EXPECT_THROW(parse_omega("a"), ConfigError);
  EXPECT_THROW(parse_omega("1:3:2.5"), ConfigError);
  EXPECT_THROW(parse_omega("3:1:4"), ConfigError);
}

TEST(Cli, ConstructJson) {
  const auto r = invoke({"construct", "--L", "6.2832", "--omega", "2", "--N", "256"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["subcommand"], "construct");
  EXPECT_EQ(j["version"], kVersion);
  EXPECT_EQ(j["config"]["N"], 256);
  EXPECT_DOUBLE_EQ(j["config"]["L"].get<double>(), 6.2832);
  EXPECT_LE(j["summary"]["r_quad"].get<double>(), 1e-8);
  EXPECT_LE(j["summary"]["r_ode"].get<double>(), 1e-6);
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["records"].size(), 256u);
}

TEST(Cli, BelowThresholdIsDomainError) {
  const auto r = invoke({"construct", "--omega", "0.1", "--L", "6.2832"});
  EXPECT_EQ(r.code, kExitDomain);
  EXPECT_NE(r.err.find("threshold"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({"construct", "--bogus", "1"}).code, kExitUsage);
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(invoke({"construct", "--N", "abc"}).code, kExitUsage);
}

TEST(Cli, ConfigErrors) {
  EXPECT_EQ(invoke({"construct", "--N", "100"}).code, kExitDomain);
  EXPECT_EQ(invoke({"construct", "--format", "xml"}).code, kExitDomain);
  EXPECT_EQ(invoke({"construct", "--omega", "1:2:3"}).code, kExitDomain);
  EXPECT_EQ(invoke({"audit", "--omega", "1:2:2"}).code, kExitDomain);
  EXPECT_EQ(invoke({"stability", "--perturbation", "odd"}).code, kExitDomain);
}

TEST(Cli, HelpListsColumns) {
  const auto r = invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("orbital_dist"), std::string::npos);
  EXPECT_NE(r.out.find("--perturbation"), std::string::npos);
}

TEST(Cli, StabilityCsv) {
  const auto r = invoke({"stability", "--L", "6.2832", "--omega", "2", "--delta", "1e-3",
                         "--t-end", "0.5", "--N", "64"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(header_line(r.out), "t,orbital_dist,parity_defect");
  EXPECT_NE(r.out.find("# config.delta=0.001"), std::string::npos);
  EXPECT_NE(r.out.find("# cqnls " + std::string(kVersion)), std::string::npos);
}

TEST(Cli, CurveIsDeterministicAcrossJobs) {
  const auto a = invoke({"curve", "--omega", "1:3:9", "--N", "128", "--jobs", "1"});
  const auto b = invoke({"curve", "--omega", "1:3:9", "--N", "128", "--jobs", "4"});
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  // only the jobs echo differs
  auto strip = [](std::string s) {
    const auto p = s.find("# config.jobs=");
    return s.erase(p, s.find('\n', p) - p);
  };
  EXPECT_EQ(strip(a.out), strip(b.out));
  EXPECT_EQ(invoke({"curve", "--omega", "1:3:9", "--N", "128"}).out, a.out);
}

TEST(Cli, CurveRecordsInadmissibleSamples) {
  const auto r = invoke({"curve", "--omega", "0.1:2:3", "--N", "64"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("# failed_samples=1"), std::string::npos);
}

TEST(Cli, ThetaJson) {
  const auto r = invoke({"theta", "--omega", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["records"].size(), 1u);
  EXPECT_LT(j["records"][0]["theta"].get<double>(), 0.0);
  EXPECT_DOUBLE_EQ(j["config"]["dt"].get<double>(), 2.0 * std::numbers::pi / 1e5);
}

TEST(Cli, SpectrumCountsPass) {
  const auto r = invoke({"spectrum", "--omega", "2", "--N", "128", "--jobs", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["summary"]["full.n_negative"], 1);
  EXPECT_EQ(j["summary"]["full.zero"], 2);
  EXPECT_EQ(j["records"].size(), 256u);
}

TEST(Cli, AuditReportsFailedClaimsWithExitTwo) {
  const auto r = invoke({"audit", "--omega", "2"});
  EXPECT_EQ(r.code, kExitAssertion);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["status"], "fail");
  const auto rec = j["records"][0];
  EXPECT_GT(rec["d2_direct"].get<double>(), 0.0);
  EXPECT_LE(rec["d2_agreement"].get<double>(), 1e-4);
  EXPECT_LE(rec["dk_partial_rel_err"].get<double>(), 1e-5);
}

TEST(Cli, OutputFileAndIoError) {
  const std::string path = ::testing::TempDir() + "cqnls_cli_out.json";
  const auto r = invoke({"construct", "--N", "64", "--omega", "1", "--output", path});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream is(path);
  EXPECT_NO_THROW(nlohmann::json::parse(is));
  std::remove(path.c_str());
  const auto bad = invoke({"construct", "--output", "/nonexistent-dir/x.json"});
  EXPECT_EQ(bad.code, kExitIo);
}

TEST(Report, SeventeenDigitsRoundTrip) {
  const double v = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_cell(v)), v);
  EXPECT_EQ(format_cell(std::int64_t{42}), "42");
  EXPECT_EQ(format_cell(true), "true");
  Report r;
  r.columns = {"a", "b"};
  EXPECT_THROW(r.add_row({1.0}), ContractError);
  r.add_row({std::nan(""), std::string("x,y")});
  std::ostringstream csv, json;
  write_csv(csv, r);
  write_json(json, r);
  EXPECT_NE(csv.str().find("nan,\"x,y\""), std::string::npos);
  const auto j = nlohmann::json::parse(json.str());
  EXPECT_TRUE(j["records"][0]["a"].is_null());
}
