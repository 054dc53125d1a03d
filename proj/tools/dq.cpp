// dq: latency-distribution analyses from the command line.
//
//   dq eval <expr>          t,pdf,cdf
//   dq reachability <file>  src,dst,t,cdf
//   dq histogram <file>     k,t,value
//   dq bounds <expr>        route,earliest,latest
//
// Exit status: 0 success, 1 input error, 2 convergence failure.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "dq/commands.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Latency distribution algebra: evaluate expressions and analyse networks"};
  app.require_subcommand(1);

  dq::CommandOptions options;
  std::uint64_t seed = 0;
  std::int64_t horizon = -1;
  std::string output;
  std::string argument;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--output", output, "Write CSV to this path instead of standard output");
  };
  auto add_analysis = [&](CLI::App* cmd) {
    add_common(cmd);
    cmd->add_flag("--simulate", options.simulate, "Add Monte-Carlo columns");
    cmd->add_option("--seed", seed, "Seed for --simulate");
    cmd->add_option("--samples", options.samples, "Trials for --simulate")->capture_default_str();
    cmd->add_option("--horizon", horizon, "Last tick rendered")->check(CLI::NonNegativeNumber);
  };

  auto* eval = app.add_subcommand("eval", "Evaluate an expression");
  eval->add_option("expr", argument, "Expression")->required();
  add_analysis(eval);

  auto* reach = app.add_subcommand("reachability", "Pairwise reachability curves of a network");
  reach->add_option("file", argument, "Network file")->required();
  reach->add_flag("--summary", options.summary, "Add all-nodes-reached curves and the connectivity verdict");
  add_analysis(reach);

  auto* hist = app.add_subcommand("histogram", "Averaged k-out-of-n broadcast histogram of a network");
  hist->add_option("file", argument, "Network file")->required();
  add_analysis(hist);

  auto* bounds = app.add_subcommand("bounds", "Earliest and latest bounds of an expression");
  bounds->add_option("expr", argument, "Expression")->required();
  add_common(bounds);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  options.seed = dq::RngSeed{seed};
  if (horizon >= 0) options.horizon = dq::Delay(horizon);

  try {
    std::ostringstream csv;
    int status = 0;
    if (eval->parsed()) {
      dq::cmd_eval(argument, options, csv);
    } else if (reach->parsed()) {
      dq::cmd_reachability(read_file(argument), options, csv);
    } else if (hist->parsed()) {
      dq::cmd_histogram(read_file(argument), options, csv);
    } else if (!dq::cmd_bounds(argument, csv)) {
      std::cerr << "error: bound routes disagree\n";
      status = 1;
    }

    if (output.empty()) {
      std::cout << csv.str();
    } else {
      std::ofstream out(output, std::ios::binary);
      if (!(out << csv.str())) throw std::runtime_error("cannot write " + output);
    }
    return status;
  } catch (const dq::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
