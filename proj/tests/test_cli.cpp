#include <gtest/gtest.h>

#include <sstream>
#include <vector>

#include "percolab/cli.hpp"

using namespace percolab;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<const char*> args) {
  args.insert(args.begin(), "percolab");
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(args.size()), args.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, CardyValue) {
  EXPECT_EQ(run({"cardy", "--r", "1"}).out, "0.5000000000\n");
  EXPECT_EQ(run({"cardy", "--z", "0"}).out, "0\n");
  const CliRun csv = run({"--format", "csv", "cardy", "--r", "1.488"});
  EXPECT_NE(csv.out.find("r,1.488000000,0.3002432886"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  const CliRun both = run({"cardy", "--r", "1", "--z", "0.5"});
  EXPECT_EQ(both.code, kExitUsage);
  EXPECT_NE(both.err.find("\"type\":\"usage\""), std::string::npos);
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"cardy", "--r", "-1"}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(Cli, DomainErrors) {
  const CliRun r = run({"annulus", "--r1", "5", "--r2", "3"});
  EXPECT_EQ(r.code, kExitDomain);
  EXPECT_NE(r.err.find("domain_error"), std::string::npos);
  EXPECT_EQ(run({"--format", "xml", "cardy", "--r", "1"}).code, kExitDomain);
  EXPECT_EQ(run({"parallelogram", "--alpha", "0.3"}).code, kExitDomain);
}

TEST(Cli, NumericErrors) {
  EXPECT_EQ(run({"--n", "1", "parallelogram", "--alpha", "0.01", "--r", "13.5"}).code, kExitNumeric);
}

TEST(Cli, DeterministicCsv) {
  const std::vector<const char*> args{"--n", "300", "--seed", "9", "rect-table", "--only", "1,2.014"};
  const CliRun a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("\"seed\":9"), std::string::npos);
  std::vector<const char*> more = args;
  more.insert(more.begin(), {"--workers", "4"});
  EXPECT_EQ(run(more).out.substr(a.out.find("# table")), a.out.substr(a.out.find("# table")));
}

TEST(Cli, FitPrediction) {
  const CliRun r = run({"fit", "--predict", "344,833,424", "--a", "0.75388", "--theta-pi", "0.26416"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("# table: parallelogram_prediction"), std::string::npos);
}
