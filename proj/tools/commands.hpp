#pragma once

#include <exception>
#include <filesystem>
#include <optional>
#include <string>

#include "config.hpp"

namespace mqc::cli {

enum class Format { json, csv };

enum ExitCode : int { kOk = 0, kValidation = 2, kTolerance = 3, kIo = 4 };

struct CommandOutput {
  std::string text;
  bool within_tolerance = true;
};

/// Formats with 9 significant digits, '.' decimal, independent of locale.
std::string format_number(double v);

/// Sender used when the config names no state file: I/4 plus the order-1
/// pattern and a (1,4) order-2 entry.
DensityMatrix default_sender(const RunConfig& config);

CommandOutput cmd_analyze(const std::filesystem::path& state_file, Format format);
CommandOutput cmd_table1(Format format);
CommandOutput cmd_evolve(const RunConfig& config, const std::filesystem::path& state_file,
                         Format format);
CommandOutput cmd_transfer_map(const RunConfig& config, Format format);
CommandOutput cmd_restore(const RunConfig& config, Format format);
CommandOutput cmd_paper_run(const RunConfig& config, Format format);
CommandOutput cmd_scan(const RunConfig& config, Format format);

/// Exit code for an exception escaping a command.
int exit_code_for(const std::exception& e);

}  // namespace mqc::cli
