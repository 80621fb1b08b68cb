#pragma once

// Artifact emission: JSON reports with stable key order (byte-identical for
// identical inputs) and CSV tables with 17-significant-digit floats,
// UTF-8/LF, comma-separated.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "emodel/integrability.hpp"

namespace emodel {

using OrderedJson = nlohmann::ordered_json;

/// Shortest-exact decimal form at 17 significant digits.
inline std::string format_sig(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

/// Shortest decimal form that parses back to exactly the same double.
inline std::string format_shortest(double x) {
  char buf[64];
  for (int p = 1; p <= 17; ++p) {
    std::snprintf(buf, sizeof(buf), "%.*g", p, x);
    if (std::strtod(buf, nullptr) == x) return buf;
  }
  return format_sig(x);
}

inline std::string format_complex(cplx z) {
  std::string out = format_shortest(z.real());
  if (z.imag() >= 0.0 || std::isnan(z.imag())) out += "+";
  out += format_shortest(z.imag());
  out += "i";
  return out;
}

struct CsvWriter {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  explicit CsvWriter(std::vector<std::string> cols)
      : columns(std::move(cols)) {}

  void add_row(const std::vector<double>& vals) {
    if (vals.size() != columns.size())
      throw std::invalid_argument("CsvWriter: row width mismatch");
    std::vector<std::string> row;
    row.reserve(vals.size());
    for (double v : vals) row.push_back(format_sig(v));
    rows.push_back(std::move(row));
  }

  std::string str() const {
    std::string out;
    for (size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ',';
      out += columns[i];
    }
    out += '\n';
    for (const auto& row : rows) {
      for (size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += row[i];
      }
      out += '\n';
    }
    return out;
  }

  void write(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("CsvWriter: cannot open " + path);
    f << str();
  }
};

inline OrderedJson to_json(const ConditionReport& r) {
  OrderedJson j;
  j["condition"] = r.condition;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["max_residual"] = r.max_residual;
  j["threshold"] = r.threshold;
  j["pass"] = r.pass;
  return j;
}

inline void write_json(const std::string& path, const OrderedJson& j) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_json: cannot open " + path);
  f << j.dump(2) << '\n';
}

}  // namespace emodel
