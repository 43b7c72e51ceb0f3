#include "config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "mqc/errors.hpp"

namespace mqc::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& v) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw std::invalid_argument("'" + v + "' is not a valid number");
  }
  return out;
}

}  // namespace

OptimizerSettings RunConfig::optimizer() const {
  OptimizerSettings s;
  s.starts = starts;
  s.seed = seed;
  s.diameter_tolerance = diameter_tolerance;
  s.max_evaluations = max_evaluations;
  return s;
}

void RunConfig::validate() const {
  layout().validate();
  if (extended_qubits < sender_qubits || extended_qubits > qubits) {
    throw RangeError("M_ext must lie between M and N");
  }
  if (coupling <= 0.0) throw RangeError("D must be positive");
  if (dt && *dt < 0.0) throw RangeError("Dt must be non-negative");
  if (!(dt_max > dt_min) || dt_min < 0.0) throw RangeError("Dt range must be non-empty and non-negative");
  if (grid_points < 2 || scan_points < 2) throw RangeError("time grids need at least two points");
  if (max_excitation && (*max_excitation < sender_qubits || *max_excitation > qubits)) {
    throw RangeError("l_max must lie between M and N");
  }
  if (!(tail_tolerance > 0.0) || !(scan_tail_tolerance > 0.0)) {
    throw RangeError("tail tolerances must be positive");
  }
  if (starts < 0 || max_evaluations < 1) throw RangeError("optimizer settings out of range");
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
  RunConfig c;
  using Setter = std::function<void(const std::string&)>;
  const std::map<std::string, Setter> setters{
      {"N", [&](const std::string& v) { c.qubits = parse_number<int>(v); }},
      {"M", [&](const std::string& v) { c.sender_qubits = parse_number<int>(v); }},
      {"M_ext", [&](const std::string& v) { c.extended_qubits = parse_number<int>(v); }},
      {"D", [&](const std::string& v) { c.coupling = parse_number<double>(v); }},
      {"b", [&](const std::string& v) { c.beta = parse_number<double>(v); }},
      {"Dt", [&](const std::string& v) { c.dt = parse_number<double>(v); }},
      {"Dt_min", [&](const std::string& v) { c.dt_min = parse_number<double>(v); }},
      {"Dt_max", [&](const std::string& v) { c.dt_max = parse_number<double>(v); }},
      {"grid_points", [&](const std::string& v) { c.grid_points = parse_number<int>(v); }},
      {"l_max",
       [&](const std::string& v) {
         if (v == "auto") {
           c.max_excitation.reset();
         } else {
           c.max_excitation = parse_number<int>(v);
         }
       }},
      {"tail_tolerance", [&](const std::string& v) { c.tail_tolerance = parse_number<double>(v); }},
      {"scan_tail_tolerance",
       [&](const std::string& v) { c.scan_tail_tolerance = parse_number<double>(v); }},
      {"scan_points", [&](const std::string& v) { c.scan_points = parse_number<int>(v); }},
      {"starts", [&](const std::string& v) { c.starts = parse_number<int>(v); }},
      {"seed", [&](const std::string& v) { c.seed = parse_number<std::uint64_t>(v); }},
      {"diameter_tolerance",
       [&](const std::string& v) { c.diameter_tolerance = parse_number<double>(v); }},
      {"max_evaluations", [&](const std::string& v) { c.max_evaluations = parse_number<int>(v); }},
      {"sender", [&](const std::string& v) { c.sender = v; }},
      {"sender_amplitude",
       [&](const std::string& v) { c.sender_amplitude = parse_number<double>(v); }},
      {"sender_top_amplitude",
       [&](const std::string& v) { c.sender_top_amplitude = parse_number<double>(v); }},
      {"input", [&](const std::string& v) { c.input = v; }},
  };

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string content = trim(raw.substr(0, raw.find('#')));
    if (content.empty()) continue;
    const auto where = origin + ":" + std::to_string(line) + ": ";
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw ParseError(where + "expected 'key = value'");
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ParseError(where + "unknown key '" + key + "'");
    if (value.empty()) throw ParseError(where + "missing value for '" + key + "'");
    try {
      it->second(value);
    } catch (const std::invalid_argument& e) {
      throw ParseError(where + key + ": " + e.what());
    }
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  RunConfig c = parse_config(text.str(), path.string());
  // Relative paths inside the file resolve against its directory.
  const auto base = path.parent_path();
  if (c.sender && c.sender->is_relative()) c.sender = base / *c.sender;
  if (c.input && c.input->is_relative()) c.input = base / *c.input;
  return c;
}

}  // namespace mqc::cli
