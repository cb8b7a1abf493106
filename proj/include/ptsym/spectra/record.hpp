// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ptsym/core/errors.hpp"
#include "ptsym/spectra/spectrum.hpp"

namespace ptsym {

/**
 * Structured-text spectrum record, schema "ptsym-spectrum/1": one line of
 * tab-separated key=value fields in this order
 *
 *   schema model alpha beta a irrep row shell complete n levels
 *
 * alpha and beta are exact rationals, a is %.17g, irrep is "-" for the full basis,
 * complete is 0/1. levels holds n entries separated by ';', each
 * "re,im,converged,delta" with re, im, delta in %.17g (delta "nan" when unmeasured).
 */
inline constexpr std::string_view kSpectrumSchema = "ptsym-spectrum/1";

inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline double parse_double(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("record: bad number '" + s + "'");
  }
  if (used != s.size()) throw UsageError("record: bad number '" + s + "'");
  return v;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

/// Parses "k=v<TAB>k=v..." keeping the field order.
inline std::vector<std::pair<std::string, std::string>> parse_fields(const std::string& line) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& f : split(line, '\t')) {
    const auto eq = f.find('=');
    if (eq == std::string::npos) throw UsageError("record: field without '=': '" + f + "'");
    out.emplace_back(f.substr(0, eq), f.substr(eq + 1));
  }
  return out;
}

inline std::string to_record(const SpectrumResult& r) {
  std::string s;
  s += "schema=" + std::string(kSpectrumSchema);
  s += "\tmodel=" + r.model;
  s += "\talpha=" + r.shape.alpha.get_str();
  s += "\tbeta=" + r.shape.beta.get_str();
  s += "\ta=" + format_double(r.a);
  s += "\tirrep=" + (r.irrep.empty() ? std::string("-") : r.irrep);
  s += "\trow=" + std::to_string(r.row);
  s += "\tshell=" + std::to_string(r.max_shell);
  s += "\tcomplete=" + std::string(r.fully_converged ? "1" : "0");
  s += "\tn=" + std::to_string(r.size());
  s += "\tlevels=";
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (k) s += ';';
    const bool conv = k < r.converged.size() && r.converged[k];
    const double d = k < r.deltas.size() ? r.deltas[k] : std::numeric_limits<double>::quiet_NaN();
    s += format_double(r.eigenvalues[k].real()) + "," + format_double(r.eigenvalues[k].imag()) + "," +
         (conv ? "1" : "0") + "," + format_double(d);
  }
  return s;
}

inline SpectrumResult parse_record(const std::string& line) {
  static const std::vector<std::string> order = {"schema", "model", "alpha", "beta", "a",     "irrep",
                                                 "row",    "shell", "complete", "n",  "levels"};
  const auto fields = parse_fields(line);
  if (fields.size() != order.size()) throw UsageError("record: expected " + std::to_string(order.size()) + " fields");
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (fields[k].first != order[k]) throw UsageError("record: field " + std::to_string(k) + " must be " + order[k]);
  }
  if (fields[0].second != kSpectrumSchema) throw UsageError("record: unsupported schema '" + fields[0].second + "'");
  SpectrumResult r;
  r.model = fields[1].second;
  r.shape.alpha = parse_rational(fields[2].second);
  r.shape.beta = parse_rational(fields[3].second);
  r.a = parse_double(fields[4].second);
  r.irrep = fields[5].second == "-" ? "" : fields[5].second;
  r.row = std::stoi(fields[6].second);
  r.max_shell = std::stoi(fields[7].second);
  r.fully_converged = fields[8].second == "1";
  const auto n = static_cast<std::size_t>(std::stoul(fields[9].second));
  const auto items = fields[10].second.empty() ? std::vector<std::string>{} : split(fields[10].second, ';');
  if (items.size() != n) throw UsageError("record: n=" + std::to_string(n) + " but " + std::to_string(items.size()) + " levels");
  for (const auto& it : items) {
    const auto p = split(it, ',');
    if (p.size() != 4) throw UsageError("record: level entry '" + it + "' needs 4 parts");
    r.eigenvalues.emplace_back(parse_double(p[0]), parse_double(p[1]));
    r.converged.push_back(p[2] == "1");
    r.deltas.push_back(parse_double(p[3]));
  }
  flag_reality(r);
  return r;
}

/// Bitwise comparison of the serialized content (NaN deltas compare equal).
inline bool same_record(const SpectrumResult& x, const SpectrumResult& y) { return to_record(x) == to_record(y); }

}  // namespace ptsym
