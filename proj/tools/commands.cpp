#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "mqc/analysis.hpp"
#include "mqc/coherence.hpp"
#include "mqc/errors.hpp"
#include "mqc/propagation.hpp"
#include "mqc/restore.hpp"
#include "mqc/transfer.hpp"

namespace mqc::cli {

using nlohmann::json;

namespace {

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

std::string pair_label(Index a, Index b) {
  return std::to_string(a + 1) + std::to_string(b + 1);
}

// Re-throws a failure inside a pipeline stage with the stage name prefixed,
// keeping the exception type (and therefore the exit code).
template <typename F>
auto stage(const std::string& name, F&& body) -> decltype(body()) {
  const auto tag = [&](const std::exception& e) { return name + ": " + e.what(); };
  try {
    return body();
  } catch (const IoError& e) {
    throw IoError(tag(e));
  } catch (const ParseError& e) {
    throw ParseError(tag(e));
  } catch (const DimensionError& e) {
    throw DimensionError(tag(e));
  } catch (const PreconditionError& e) {
    throw PreconditionError(tag(e));
  } catch (const RangeError& e) {
    throw RangeError(tag(e));
  } catch (const CapacityError& e) {
    throw CapacityError(tag(e));
  } catch (const std::exception& e) {
    throw std::runtime_error(tag(e));
  }
}

DensityMatrix load_sender(const RunConfig& config) {
  if (!config.sender) return default_sender(config);
  DensityMatrix s = read_density_matrix(*config.sender);
  if (s.qubits() != config.sender_qubits) {
    throw DimensionError("sender state has " + std::to_string(s.qubits()) + " qubits, M = " +
                         std::to_string(config.sender_qubits));
  }
  return s;
}

int engine_excitation(const RunConfig& config, double tolerance) {
  return config.max_excitation ? *config.max_excitation
                               : auto_max_excitation(config.layout(), tolerance);
}

TransferEngine make_engine(const RunConfig& config, double tolerance) {
  config.validate();
  return TransferEngine(config.layout(), config.coupling, engine_excitation(config, tolerance));
}

struct Registration {
  double t;
  bool optimized;
};

// Registration time in engine units (t = Dt / D).
Registration registration_time(const RunConfig& config, const TransferEngine& engine) {
  if (config.dt) return {*config.dt / config.coupling, false};
  const auto best = engine.find_optimal_time(config.dt_min / config.coupling,
                                             config.dt_max / config.coupling, config.grid_points);
  return {best.time, true};
}

struct RestoreRun {
  double t;
  TransferMap map;
  PhaseOptimization result;
  CMatrix unitary;
};

RestoreRun run_restore(const RunConfig& config, const TransferEngine& engine,
                       std::vector<std::vector<double>> seed_points = {}) {
  if (config.sender_qubits != 2) {
    throw PreconditionError("restoration target is defined for a two-qubit sender (M = 2)");
  }
  const Registration reg = stage("optimal time", [&] { return registration_time(config, engine); });
  TransferMap map = stage("transfer map", [&] {
    return engine.transfer_map(reg.t, config.extended_qubits);
  });
  OptimizerSettings settings = config.optimizer();
  settings.seed_points = std::move(seed_points);
  const auto target = single_quantum_target();
  return stage("phase optimization", [&] {
    if (config.extended_qubits == 2) {
      auto r = optimize_phases(map, target, settings);
      CMatrix u = build_unitary_2q(r.phases);
      return RestoreRun{reg.t, std::move(map), std::move(r), std::move(u)};
    }
    const auto basis = build_commuting_basis(config.extended_qubits);
    const auto family = generator_family(basis);
    auto r = optimize_phases(map, target, family, 2, settings);
    CMatrix u = family.build(r.phases.phi);
    return RestoreRun{reg.t, std::move(map), std::move(r), std::move(u)};
  });
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
  if (ec != std::errc()) throw RangeError("number does not fit the output buffer");
  return std::string(buf, end);
}

DensityMatrix default_sender(const RunConfig& config) {
  if (config.sender_qubits != 2) {
    throw PreconditionError("the default sender needs M = 2; name a sender state file instead");
  }
  CMatrix s = CMatrix::Identity(4, 4) / 4.0 + single_quantum_pattern(config.sender_amplitude);
  s(0, 3) = config.sender_top_amplitude;
  s(3, 0) = config.sender_top_amplitude;
  return DensityMatrix(2, std::move(s));
}

CommandOutput cmd_analyze(const std::filesystem::path& state_file, Format format) {
  const DensityMatrix rho = read_density_matrix(state_file, Physicality::unchecked);
  const int n = rho.qubits();
  const auto in = intensities(rho.matrix(), n);
  double total = 0.0;
  for (double v : in) total += v;
  const double purity = rho.purity();
  const double min_eig = rho.min_eigenvalue();
  const bool psd = is_positive_semidefinite(rho.matrix());

  if (format == Format::csv) {
    std::ostringstream out;
    out << "quantity,value\n";
    for (int k = -n; k <= n; ++k) out << "I" << k << ',' << format_number(in[k + n]) << '\n';
    out << "sum_intensities," << format_number(total) << '\n'
        << "purity," << format_number(purity) << '\n'
        << "min_eigenvalue," << format_number(min_eig) << '\n'
        << "positive_semidefinite," << (psd ? 1 : 0) << '\n';
    return {out.str()};
  }
  json doc{{"n_qubits", n},
           {"intensities", json::object()},
           {"sum_intensities", total},
           {"purity", purity},
           {"min_eigenvalue", min_eig},
           {"positive_semidefinite", psd}};
  for (int k = -n; k <= n; ++k) doc["intensities"][std::to_string(k)] = in[k + n];
  return {dump(doc)};
}

CommandOutput cmd_table1(Format format) {
  const auto rows = table1();
  if (format == Format::csv) return {table1_csv(rows)};
  json doc = json::array();
  for (const auto& r : rows) {
    doc.push_back({{"N", r.qubits},
                   {"n", r.order},
                   {"N_n", r.rank_bound},
                   {"two_I_max", r.two_max_intensity.str()}});
  }
  return {dump(doc)};
}

CommandOutput cmd_evolve(const RunConfig& config, const std::filesystem::path& state_file,
                         Format format) {
  if (!config.dt) throw PreconditionError("evolve needs a registration time Dt in the config");
  if (config.coupling <= 0.0 || *config.dt < 0.0) throw RangeError("D must be positive, Dt >= 0");
  const DensityMatrix rho = read_density_matrix(state_file, Physicality::unchecked);
  const auto system = build_sectors(rho.qubits(), config.coupling);
  const auto props = propagators(system, *config.dt / config.coupling);
  const DensityMatrix out = evolve(rho, props);

  if (format == Format::json) return {dump(to_json(out))};
  const int n = rho.qubits();
  const auto before = intensities(rho.matrix(), n);
  const auto after = intensities(out.matrix(), n);
  std::ostringstream csv;
  csv << "n,I_initial,I_evolved\n";
  for (int k = -n; k <= n; ++k) {
    csv << k << ',' << format_number(before[k + n]) << ',' << format_number(after[k + n]) << '\n';
  }
  return {csv.str()};
}

CommandOutput cmd_transfer_map(const RunConfig& config, Format format) {
  const TransferEngine engine = make_engine(config, config.tail_tolerance);
  const Registration reg = stage("optimal time", [&] { return registration_time(config, engine); });
  const TransferMap map = stage("transfer map", [&] { return engine.transfer_map(reg.t); });
  json doc = map.to_json();
  doc["Dt"] = reg.t * config.coupling;
  doc["l_max"] = engine.max_excitation();
  doc["neglected_weight_bound"] = engine.neglected_weight_bound();
  if (format == Format::json) return {dump(doc)};

  std::ostringstream csv;
  csv << "label,order,re,im\n";
  const int orders = std::min(map.sender_qubits(), map.receiver_qubits());
  for (int n = 0; n <= orders; ++n) {
    for (const auto& [label, value] : doc["order" + std::to_string(n)].items()) {
      csv << label << ',' << n << ',' << format_number(value[0].get<double>()) << ','
          << format_number(value[1].get<double>()) << '\n';
    }
  }
  return {csv.str()};
}

CommandOutput cmd_restore(const RunConfig& config, Format format) {
  const TransferEngine engine = make_engine(config, config.tail_tolerance);
  const RestoreRun run = run_restore(config, engine);
  json doc = to_json(run.result);
  doc["Dt"] = run.t * config.coupling;
  doc["M_ext"] = config.extended_qubits;
  if (format == Format::json) return {dump(doc)};

  std::ostringstream csv;
  csv << "quantity,re,im\n";
  csv << "Dt," << format_number(run.t * config.coupling) << ",0\n";
  for (std::size_t k = 0; k < run.result.phases.phi.size(); ++k) {
    csv << "phi" << k + 1 << ',' << format_number(run.result.phases.phi[k]) << ",0\n";
  }
  csv << "residual," << format_number(run.result.residual) << ",0\n";
  for (std::size_t k = 0; k < run.result.alphas.size(); ++k) {
    const auto [a, b] = run.result.alpha_positions[k];
    csv << "a_" << pair_label(a, b) << ',' << format_number(run.result.alphas[k].real()) << ','
        << format_number(run.result.alphas[k].imag()) << '\n';
  }
  return {csv.str()};
}

CommandOutput cmd_paper_run(const RunConfig& config, Format format) {
  if (config.qubits != 20 || config.sender_qubits != 2 || config.extended_qubits != 2 ||
      config.beta != 10.0) {
    throw PreconditionError("the reference run needs N = 20, M = M_ext = 2, b = 10");
  }
  const TransferEngine engine = stage("setup", [&] { return make_engine(config, config.tail_tolerance); });
  // Known reference phases enter as one extra start next to the random ones.
  const RestoreRun run = run_restore(config, engine, {{2.41811, 1.57113, 0, 0, 0, 0}});

  const auto target = single_quantum_target();
  const auto report = stage("restored form", [&] {
    const CMatrix receiver = run.map.conjugated(run.unitary).apply(target.sender_pattern);
    return verify_restored_form(receiver, target.sender_pattern, {{0, 1}, {0, 2}, {1, 3}},
                                target.zero_positions, 1e-6);
  });

  struct Check {
    std::string name;
    double value;
    double reference;
    double tolerance;
    bool pass;
  };
  std::vector<Check> checks;
  const auto near = [&](std::string name, double v, double ref, double tol) {
    checks.push_back({std::move(name), v, ref, tol, std::abs(v - ref) <= tol});
  };
  near("Dt_opt", run.t * config.coupling, 24.407, 0.01);
  const char* names[] = {"abs_a12", "abs_a13", "abs_a24", "abs_a34"};
  const double refs[] = {0.63897, 0.30585, 0.30582, 0.0};
  const double tols[] = {1e-3, 1e-3, 1e-3, 1e-6};
  for (int k = 0; k < 4; ++k) near(names[k], std::abs(run.result.alphas[k]), refs[k], tols[k]);
  checks.push_back({"restored_zero", report.max_zero_magnitude, 0.0, 1e-6, report.restored});

  bool ok = true;
  for (const auto& c : checks) ok = ok && c.pass;

  if (format == Format::csv) {
    std::ostringstream csv;
    csv << "quantity,value,reference,tolerance,pass\n";
    for (const auto& c : checks) {
      csv << c.name << ',' << format_number(c.value) << ',' << format_number(c.reference) << ','
          << format_number(c.tolerance) << ',' << (c.pass ? "PASS" : "FAIL") << '\n';
    }
    return {csv.str(), ok};
  }

  json doc;
  doc["l_max"] = engine.max_excitation();
  doc["neglected_weight_bound"] = engine.neglected_weight_bound();
  doc["Dt_opt"] = run.t * config.coupling;
  doc["phi"] = run.result.phases.phi;
  doc["phi_reference"] = {2.41811, 1.57113, 0, 0, 0, 0};
  doc["residual"] = run.result.residual;
  const Complex ref_alpha[] = {{0.00021, 0.63897}, {0.00010, -0.30585}, {0.00010, -0.30582}, {}};
  for (std::size_t k = 0; k < run.result.alphas.size(); ++k) {
    const auto [a, b] = run.result.alpha_positions[k];
    doc["alphas"]["a_" + pair_label(a, b)] = {{"value", complex_json(run.result.alphas[k])},
                                              {"reference", complex_json(ref_alpha[k])}};
  }
  for (const auto& c : checks) {
    doc["checks"].push_back({{"name", c.name},
                             {"value", c.value},
                             {"reference", c.reference},
                             {"tolerance", c.tolerance},
                             {"pass", c.pass}});
  }
  doc["pass"] = ok;
  return {dump(doc), ok};
}

CommandOutput cmd_scan(const RunConfig& config, Format format) {
  const DensityMatrix sender = stage("sender", [&] { return load_sender(config); });
  const TransferEngine engine = make_engine(config, config.scan_tail_tolerance);
  std::vector<double> times = time_grid(config.dt_min / config.coupling,
                                        config.dt_max / config.coupling, config.scan_points);
  const auto rows = stage("scan", [&] { return engine.scan(sender.matrix(), times); });

  const int m = config.sender_qubits;
  const std::string corner = "1" + std::to_string(Index{1} << m);
  const std::string top = "abs_alpha_" + corner + "_" + corner;
  if (format == Format::json) {
    json doc{{"l_max", engine.max_excitation()}, {"rows", json::array()}};
    for (const auto& r : rows) {
      doc["rows"].push_back(
          {{"Dt", r.time * config.coupling}, {top, r.abs_alpha_top},
           {"intensities", r.intensities}});
    }
    return {dump(doc)};
  }
  std::ostringstream csv;
  csv << "Dt," << top;
  for (int n = 0; n <= m; ++n) csv << ",I" << n << 'R';
  csv << '\n';
  for (const auto& r : rows) {
    csv << format_number(r.time * config.coupling) << ',' << format_number(r.abs_alpha_top);
    for (double v : r.intensities) csv << ',' << format_number(v);
    csv << '\n';
  }
  return {csv.str()};
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const IoError*>(&e)) return kIo;
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const std::invalid_argument*>(&e) ||
      dynamic_cast<const std::out_of_range*>(&e) || dynamic_cast<const std::length_error*>(&e) ||
      dynamic_cast<const nlohmann::json::exception*>(&e)) {
    return kValidation;
  }
  return 1;
}

}  // namespace mqc::cli
