#pragma once

// Flat key=value experiment configuration with command-line overrides.
// Complex numbers are written "a+bi"; lists are comma-separated. The
// serializer emits a fixed key order so parse(serialize(c)) == c.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "emodel/algebra.hpp"
#include "emodel/report.hpp"

namespace emodel {

struct ExperimentConfig {
  std::string command = "verify";
  std::string model = "pcm";
  int N = 2;
  double eta = 1.0;
  double mu = 0.0;
  std::string xi_preset = "cartan-regular";
  double t_end = 10.0;
  double dt = 1e-3;
  std::string scheme = "rk4";
  std::vector<cplx> lambdas;
  int samples = 200;
  std::uint64_t seed = 1;
  std::map<std::string, double> tolerances;  ///< keys serialized as tol.<name>
  std::string csv_path;
  std::string json_path;

  bool operator==(const ExperimentConfig&) const = default;
};

inline const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> v{"simulate", "verify",   "lax-check",
                                          "reduce",   "appendix", "parity"};
  return v;
}

inline const std::vector<std::string>& known_models() {
  static const std::vector<std::string> v{"pendulum", "pcm",      "cpn",
                                          "biyb-su2", "biyb-su3", "yb-cpn"};
  return v;
}

inline const std::vector<std::string>& known_presets() {
  static const std::vector<std::string> v{"cartan-regular", "cpn-block"};
  return v;
}

inline const std::vector<std::string>& known_schemes() {
  static const std::vector<std::string> v{"rk4", "adaptive"};
  return v;
}

inline cplx parse_complex(const std::string& s) {
  const char* p = s.c_str();
  char* end = nullptr;
  const double re = std::strtod(p, &end);
  if (end == p) throw std::invalid_argument("parse_complex: bad value " + s);
  p = end;
  const double im = std::strtod(p, &end);
  if (end == p || *end != 'i' || *(end + 1) != '\0')
    throw std::invalid_argument("parse_complex: expected a+bi, got " + s);
  return {re, im};
}

namespace detail {

inline bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

inline double parse_double(const std::string& key, const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw std::invalid_argument("config: bad numeric value for " + key);
  return v;
}

}  // namespace detail

inline void apply_config_entry(ExperimentConfig& c, const std::string& key,
                               const std::string& value) {
  if (key == "command") {
    c.command = value;
  } else if (key == "model") {
    c.model = value;
  } else if (key == "N") {
    c.N = static_cast<int>(detail::parse_double(key, value));
  } else if (key == "eta") {
    c.eta = detail::parse_double(key, value);
  } else if (key == "mu") {
    c.mu = detail::parse_double(key, value);
  } else if (key == "xi_preset") {
    c.xi_preset = value;
  } else if (key == "t_end") {
    c.t_end = detail::parse_double(key, value);
  } else if (key == "dt") {
    c.dt = detail::parse_double(key, value);
  } else if (key == "scheme") {
    c.scheme = value;
  } else if (key == "lambdas") {
    c.lambdas.clear();
    for (const auto& tok : detail::split(value, ','))
      c.lambdas.push_back(parse_complex(tok));
  } else if (key == "samples") {
    c.samples = static_cast<int>(detail::parse_double(key, value));
  } else if (key == "seed") {
    c.seed = static_cast<std::uint64_t>(detail::parse_double(key, value));
  } else if (key == "csv_path") {
    c.csv_path = value;
  } else if (key == "json_path") {
    c.json_path = value;
  } else if (key.rfind("tol.", 0) == 0) {
    c.tolerances[key.substr(4)] = detail::parse_double(key, value);
  } else {
    throw std::invalid_argument("config: unknown key " + key);
  }
}

inline ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  c.lambdas.clear();
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key=value, got " + t);
    apply_config_entry(c, detail::trim(t.substr(0, eq)),
                       detail::trim(t.substr(eq + 1)));
  }
  return c;
}

inline std::string serialize_config(const ExperimentConfig& c) {
  std::string out;
  auto kv = [&out](const std::string& k, const std::string& v) {
    out += k;
    out += " = ";
    out += v;
    out += '\n';
  };
  kv("command", c.command);
  kv("model", c.model);
  kv("N", std::to_string(c.N));
  kv("eta", format_sig(c.eta));
  kv("mu", format_sig(c.mu));
  kv("xi_preset", c.xi_preset);
  kv("t_end", format_sig(c.t_end));
  kv("dt", format_sig(c.dt));
  kv("scheme", c.scheme);
  if (!c.lambdas.empty()) {
    std::string ls;
    for (size_t i = 0; i < c.lambdas.size(); ++i) {
      if (i) ls += ", ";
      ls += format_complex(c.lambdas[i]);
    }
    kv("lambdas", ls);
  }
  kv("samples", std::to_string(c.samples));
  kv("seed", std::to_string(c.seed));
  for (const auto& [k, v] : c.tolerances) kv("tol." + k, format_sig(v));
  if (!c.csv_path.empty()) kv("csv_path", c.csv_path);
  if (!c.json_path.empty()) kv("json_path", c.json_path);
  return out;
}

inline void validate_config(const ExperimentConfig& c) {
  if (!detail::contains(known_commands(), c.command))
    throw std::invalid_argument("config: unknown command " + c.command);
  if (!detail::contains(known_models(), c.model))
    throw std::invalid_argument("config: unknown model " + c.model);
  if (!detail::contains(known_presets(), c.xi_preset))
    throw std::invalid_argument("config: unknown xi_preset " + c.xi_preset);
  if (!detail::contains(known_schemes(), c.scheme))
    throw std::invalid_argument("config: unknown scheme " + c.scheme);
  if (c.N < 1) throw std::invalid_argument("config: N must be >= 1");
  if (c.dt <= 0.0) throw std::invalid_argument("config: dt must be > 0");
  if (c.t_end <= 0.0) throw std::invalid_argument("config: t_end must be > 0");
  if (c.samples < 1)
    throw std::invalid_argument("config: samples must be >= 1");
  if (c.eta < 0.0) throw std::invalid_argument("config: eta must be >= 0");
  if (c.mu < 0.0) throw std::invalid_argument("config: mu must be >= 0");
  const bool pcm_family = c.model == "pendulum" || c.model == "pcm" ||
                          c.model == "cpn";
  if (pcm_family) {
    for (cplx lm : c.lambdas) {
      if (std::abs(1.0 - lm * lm) < 1e-12)
        throw std::invalid_argument(
            "config: lambdas: spectral pole 1-lambda^2 ~ 0 at " +
            format_complex(lm));
    }
  }
  for (const auto& [k, v] : c.tolerances) {
    if (v <= 0.0)
      throw std::invalid_argument("config: tol." + k + " must be > 0");
  }
}

inline double tolerance_or(const ExperimentConfig& c, const std::string& key,
                           double fallback) {
  const auto it = c.tolerances.find(key);
  return it == c.tolerances.end() ? fallback : it->second;
}

}  // namespace emodel
