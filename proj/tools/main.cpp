#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "mqc/errors.hpp"

namespace fs = std::filesystem;
using namespace mqc::cli;

int main(int argc, char** argv) {
  CLI::App app{"Multiple-quantum coherence transfer along spin-1/2 XX chains"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::string format_name;
  app.add_option("--config", config_path, "Run configuration (key = value lines)");
  app.add_option("--seed", seed, "Optimizer seed; overrides the config");
  app.add_option("--out", out_path, "Write output here instead of stdout");
  app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"json", "csv"}));

  std::string state_file;
  auto* analyze = app.add_subcommand("analyze", "Coherence intensities, purity, positivity of a state");
  analyze->add_option("state", state_file, "State JSON file (default: config input)");
  auto* table = app.add_subcommand("table1", "Rank bounds and maximal intensities for N = 2..5");
  auto* evolve = app.add_subcommand("evolve", "Evolve a state under the XX chain to time Dt");
  evolve->add_option("state", state_file, "State JSON file (default: config input)");
  auto* map = app.add_subcommand("transfer-map", "Sender-to-receiver transfer coefficients");
  auto* restore = app.add_subcommand("restore", "Optimize receiver restoration phases");
  auto* reference = app.add_subcommand("paper-run", "Reference N = 20 run with pass/fail checks");
  auto* scan = app.add_subcommand("scan", "Receiver intensities and top coefficient over a Dt grid");
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    RunConfig config = config_path.empty() ? RunConfig{} : load_config(config_path);
    if (seed) config.seed = *seed;
    // Tabular commands default to CSV, structured ones to JSON.
    const bool tabular = table->parsed() || scan->parsed();
    const Format format = format_name.empty() ? (tabular ? Format::csv : Format::json)
                          : format_name == "csv" ? Format::csv
                                                 : Format::json;

    if ((analyze->parsed() || evolve->parsed()) && state_file.empty()) {
      if (!config.input) throw mqc::PreconditionError("no state file given and no input in config");
      state_file = config.input->string();
    }

    CommandOutput result;
    if (analyze->parsed()) {
      result = cmd_analyze(state_file, format);
    } else if (table->parsed()) {
      result = cmd_table1(format);
    } else if (evolve->parsed()) {
      result = cmd_evolve(config, state_file, format);
    } else if (map->parsed()) {
      result = cmd_transfer_map(config, format);
    } else if (restore->parsed()) {
      result = cmd_restore(config, format);
    } else if (reference->parsed()) {
      result = cmd_paper_run(config, format);
    } else if (scan->parsed()) {
      result = cmd_scan(config, format);
    }

    if (out_path.empty()) {
      std::cout << result.text << std::flush;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw mqc::IoError("cannot open output file " + out_path);
      out << result.text;
      if (!out.flush()) throw mqc::IoError("failed writing " + out_path);
    }
    if (!result.within_tolerance) {
      std::cerr << "error: tolerance check failed\n";
      return kTolerance;
    }
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}
