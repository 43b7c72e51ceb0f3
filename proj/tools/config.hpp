#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "mqc/restore.hpp"
#include "mqc/transfer.hpp"

namespace mqc::cli {

/// Experiment settings; defaults reproduce the N=20, b=10 two-qubit run.
struct RunConfig {
  int qubits = 20;
  int sender_qubits = 2;
  int extended_qubits = 2;
  double coupling = 1.0;
  double beta = 10.0;

  std::optional<double> dt;  // registration time D·t; optimal time when absent
  double dt_min = 0.0;
  double dt_max = 50.0;
  int grid_points = 2000;

  std::optional<int> max_excitation;  // auto from the tail tolerance when absent
  double tail_tolerance = kDefaultTailTolerance;
  double scan_tail_tolerance = 1e-6;
  int scan_points = 2000;

  int starts = 64;
  std::uint64_t seed = 1;
  double diameter_tolerance = 1e-8;
  int max_evaluations = 20000;

  // Sender: state file, or identity/4 plus amplitude a on the order-1
  // pattern and amplitude a2 at (1,4).
  std::optional<std::filesystem::path> sender;
  double sender_amplitude = 0.1;
  double sender_top_amplitude = 0.1;

  std::optional<std::filesystem::path> input;

  ChainLayout layout() const { return {qubits, sender_qubits, beta}; }
  OptimizerSettings optimizer() const;
  void validate() const;
};

/// Parses `key = value` lines; '#' starts a comment. Unknown keys and bad
/// values raise ParseError with the line number.
RunConfig parse_config(const std::string& text, const std::string& origin = "config");
RunConfig load_config(const std::filesystem::path& path);

}  // namespace mqc::cli
