#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <sstream>
#include <string>

#include "dq/commands.hpp"
#include "dq/csv.hpp"
#include "support/golden.hpp"

namespace dq {
namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

std::string quoted(const std::string& arg) { return "'" + arg + "'"; }

RunResult run_cli(const std::vector<std::string>& args) {
  std::string command = "cd " + quoted(testing::data_path("fixtures")) + " && " + quoted(DQ_CLI_PATH);
  for (const auto& a : args) command += " " + quoted(a);
  command += " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

class Golden : public ::testing::TestWithParam<testing::GoldenCase> {};

TEST_P(Golden, BinaryOutputMatches) {
  auto r = run_cli(GetParam().args);
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, testing::golden_text(GetParam()));
}

TEST_P(Golden, InProcessOutputMatches) {
  EXPECT_EQ(testing::run_in_process(GetParam()), testing::golden_text(GetParam()));
}

INSTANTIATE_TEST_SUITE_P(Cases, Golden, ::testing::ValuesIn(testing::golden_cases()),
                         [](const auto& info) { return info.param.name; });

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli({"eval", "delay(1)"}).status, 0);
  EXPECT_EQ(run_cli({"eval", "delay(1) ;"}).status, 1);
  EXPECT_EQ(run_cli({"reachability", "missing.net"}).status, 1);
  EXPECT_EQ(run_cli({"frobnicate"}).status, 1);
  EXPECT_EQ(run_cli({"reachability", "lossy_pair.net"}).status, 2);
}

TEST(Cli, ErrorsGoToStandardError) {
  std::string command = quoted(DQ_CLI_PATH) + " eval 'delay(' 2>&1 1>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::array<char, 512> buf{};
  std::string err(buf.data(), fread(buf.data(), 1, buf.size(), pipe));
  pclose(pipe);
  EXPECT_EQ(err.rfind("error: syntax at 1:7", 0), 0u) << err;
}

TEST(Cli, OutputFlagWritesFile) {
  auto path = ::testing::TempDir() + "dq_output_flag.csv";
  auto r = run_cli({"eval", "delay(1)", "--output", path});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "");
  EXPECT_EQ(testing::slurp(path), "t,pdf,cdf\n0,0,0\n1,1,1\n");
}

TEST(Cli, SimulationIsDeterministicPerSeed) {
  std::vector<std::string> args{"eval", "pdf[0.2,0.3,0.4] \\/ delay(1) ; pdf[0.5,0.5]", "--simulate",
                                "--seed", "11", "--samples", "500"};
  auto a = run_cli(args), b = run_cli(args);
  args[4] = "12";
  auto c = run_cli(args);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
}

TEST(Cli, HorizonOverride) {
  std::ostringstream out;
  CommandOptions options;
  options.horizon = Delay(3);
  cmd_eval("delay(1)", options, out);
  EXPECT_EQ(out.str(), "t,pdf,cdf\n0,0,0\n1,1,1\n2,0,1\n3,0,1\n");
}

TEST(Cli, DisconnectedVerdict) {
  std::ostringstream out;
  CommandOptions options;
  options.summary = true;
  cmd_reachability("node a b\n", options, out);
  EXPECT_NE(out.str().find("verdict,not strongly connected\n"), std::string::npos);
}

TEST(Cli, BoundsExamples) {
  auto expect_bounds = [](const std::string& expr, const std::string& earliest, const std::string& latest) {
    std::ostringstream out;
    EXPECT_TRUE(cmd_bounds(expr, out));
    auto row = "," + earliest + "," + latest + "\n";
    EXPECT_EQ(out.str(), "route,earliest,latest\ndistribution" + row + "bounds" + row);
  };
  expect_bounds("delay(2) ; delay(3)", "5", "5");
  expect_bounds("preserved(0.5)", "0", "Never");
  expect_bounds("delay(1) \\/ delay(4)", "1", "1");
}

TEST(Csv, NumberFormatting) {
  EXPECT_EQ(csv::format_number(0.0), "0");
  EXPECT_EQ(csv::format_number(-0.0), "0");
  EXPECT_EQ(csv::format_number(1.0), "1");
  EXPECT_EQ(csv::format_number(2.0 / 3.0), "0.666666667");
  EXPECT_EQ(csv::format_number(1e-12), "1e-12");
  EXPECT_EQ(csv::split_row("a,,b"), (std::vector<std::string>{"a", "", "b"}));
}

TEST(Csv, EvalRoundTrip) {
  const std::string expr = "pdf[0.1,0.2,0.3] ; cdf[0.3,0.9] \\/ retransmit(2, preserved(0.7), pdf[0.25,0.5])";
  auto ld = evaluate<LatencyDistribution>(*parse_expression(expr));
  std::ostringstream out;
  cmd_eval(expr, {}, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    auto f = csv::split_row(line);
    auto t = static_cast<std::size_t>(csv::parse_number(f.at(0)));
    EXPECT_NEAR(csv::parse_number(f.at(1)), csv::pdf_at(ld, t), 1e-9);
    EXPECT_NEAR(csv::parse_number(f.at(2)), csv::cdf_at(ld, t), 1e-9);
    ++rows;
  }
  EXPECT_EQ(rows, ld.pdf().size());
}

TEST(Csv, ReachabilityRoundTrip) {
  const std::string net = "node a b c\nedge a b pdf:[0,1]\nedge b c delay:3\n";
  auto limit = optimal_connections(to_matrix(parse_network(net)));
  std::ostringstream out;
  cmd_reachability(net, {}, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "src,dst,t,cdf");
  const std::vector<std::string> names{"a", "b", "c"};
  auto index = [&](const std::string& s) { return static_cast<std::size_t>(std::find(names.begin(), names.end(), s) - names.begin()); };
  while (std::getline(in, line)) {
    auto f = csv::split_row(line);
    auto t = static_cast<std::size_t>(csv::parse_number(f.at(2)));
    EXPECT_NEAR(csv::parse_number(f.at(3)), csv::cdf_at(limit(index(f[0]), index(f[1])), t), 1e-9);
  }
}

}  // namespace
}  // namespace dq
