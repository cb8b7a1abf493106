// SPDX-License-Identifier: Apache-2.0
// Command-line front end: spectrum, scan, series, transition, classify3d, charpoly.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ptsym/ptsym.hpp"

namespace {

using namespace ptsym;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitPartial = 3;
constexpr int kExitNumerical = 4;
constexpr const char* kOutDirEnv = "PTSYM_OUT_DIR";

struct RunConfig {
  std::string command;
  std::string model;
  std::optional<double> a;
  std::string a_grid;
  std::string alpha = "1";
  std::string beta = "1/10";
  std::vector<std::string> irreps;
  std::optional<int> row;
  std::size_t levels = 10;
  std::size_t level = 0;
  double tol = 1e-8;
  std::optional<int> max_shell;
  std::size_t order = 8;
  std::string out;
  std::string format;
};

/// Config-file values fill only fields not given as flags.
void apply_config_file(const std::string& path, RunConfig& c, const CLI::App& sub) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file '" + path + "': " + e.what());
  }
  auto unset = [&](const char* flag) { return sub.get_option(flag)->count() == 0; };
  auto num_or_string = [](const nlohmann::json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  if (j.contains("model") && unset("--model")) c.model = j["model"].get<std::string>();
  if (j.contains("a") && unset("--a")) c.a = j["a"].get<double>();
  if (j.contains("a_grid") && unset("--a-grid")) c.a_grid = j["a_grid"].get<std::string>();
  if (j.contains("alpha") && unset("--alpha")) c.alpha = num_or_string(j["alpha"]);
  if (j.contains("beta") && unset("--beta")) c.beta = num_or_string(j["beta"]);
  if (j.contains("irrep") && unset("--irrep")) {
    c.irreps = j["irrep"].is_array() ? j["irrep"].get<std::vector<std::string>>()
                                     : std::vector<std::string>{j["irrep"].get<std::string>()};
  }
  if (j.contains("row") && unset("--row")) c.row = j["row"].get<int>();
  if (j.contains("levels") && unset("--levels")) c.levels = j["levels"].get<std::size_t>();
  if (j.contains("level") && unset("--level")) c.level = j["level"].get<std::size_t>();
  if (j.contains("tol") && unset("--tol")) c.tol = j["tol"].get<double>();
  if (j.contains("max_shell") && unset("--max-shell")) c.max_shell = j["max_shell"].get<int>();
  if (j.contains("order") && unset("--order")) c.order = j["order"].get<std::size_t>();
  if (j.contains("out") && unset("--out")) c.out = j["out"].get<std::string>();
  if (j.contains("format") && unset("--format")) c.format = j["format"].get<std::string>();
}

Rational parse_param(const std::string& text, const char* name) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string("--") + name + ": expected a rational or decimal number, got '" + text + "'");
  }
}

ModelSpec resolve_model(const RunConfig& c) {
  if (c.model.empty()) throw UsageError("--model is required");
  const auto names = model_names();
  if (std::find(names.begin(), names.end(), c.model) == names.end()) {
    std::string known;
    for (const auto& n : names) known += (known.empty() ? "" : ", ") + n;
    throw UsageError("unknown model '" + c.model + "'; catalog: " + known);
  }
  return model_spec(c.model, ShapeParams{parse_param(c.alpha, "alpha"), parse_param(c.beta, "beta")});
}

std::vector<std::string> resolve_irreps(const RunConfig& c, const ModelSpec& m) {
  const auto table = m.table();
  if (c.irreps.empty()) return table.irrep_labels();
  for (const auto& ir : c.irreps) {
    if (!table.has_irrep(ir)) {
      std::string known;
      for (const auto& l : table.irrep_labels()) known += (known.empty() ? "" : ", ") + l;
      throw UsageError("irrep '" + ir + "' not in group " + table.name() + " of " + m.name + "; irreps: " + known);
    }
  }
  return c.irreps;
}

std::vector<int> resolve_rows(const RunConfig& c, const CharacterTable& t, const std::string& irrep) {
  if (c.row) {
    if (*c.row < 0 || *c.row >= t.irrep(irrep).dimension) throw UsageError("--row out of range for " + irrep);
    return {*c.row};
  }
  return {0};
}

std::vector<double> parse_grid(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 3) throw UsageError("--a-grid expects lo:hi:step");
  try {
    return make_grid(std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2]));
  } catch (const std::invalid_argument&) {
    throw UsageError("--a-grid: bad number in '" + spec + "'");
  }
}

/// Writes to --out, to $PTSYM_OUT_DIR/<default_name>, or to stdout.
void emit(const RunConfig& c, const std::string& default_name, const std::string& text) {
  std::string path = c.out;
  if (path.empty()) {
    if (const char* dir = std::getenv(kOutDirEnv); dir && *dir) {
      std::filesystem::create_directories(dir);
      path = (std::filesystem::path(dir) / default_name).string();
    }
  }
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
  std::cerr << "wrote " << path << "\n";
}

std::string fmt_complex(const Complex& z) {
  char buf[80];
  const double im = std::abs(z.imag()) < 5e-11 ? 0.0 : z.imag();
  std::snprintf(buf, sizeof buf, "%.10f %+.10fi", z.real(), im);
  return buf;
}

int cmd_spectrum(const RunConfig& c) {
  const ModelSpec m = resolve_model(c);
  if (!c.a) throw UsageError("spectrum needs --a");
  const auto table = m.table();
  bool partial = false;
  std::vector<SpectrumResult> results;
  for (const auto& ir : resolve_irreps(c, m)) {
    for (int row : resolve_rows(c, table, ir)) {
      SpectrumResult r;
      if (c.max_shell) {
        r = block_spectrum(m, *c.a, ir, row, *c.max_shell);
      } else {
        ConvergeOptions o;
        o.tol = c.tol;
        r = converge(m, *c.a, ir, row, c.levels, o);
        partial = partial || !r.fully_converged;
      }
      results.push_back(std::move(r));
    }
  }
  std::string text;
  if (c.format.empty() || c.format == "record") {
    for (const auto& r : results) text += to_record(r) + "\n";
  } else if (c.format == "table") {
    struct Row {
      Complex e;
      std::string irrep;
      int dim;
      bool conv;
    };
    std::vector<Row> rows;
    for (const auto& r : results) {
      const int dim = table.irrep(r.irrep).dimension;
      for (std::size_t k = 0; k < std::min(c.levels, r.size()); ++k) {
        rows.push_back({r.eigenvalues[k], r.irrep, dim, r.converged[k]});
      }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) { return spectral_less(x.e, y.e); });
    // --levels counts states: a level of a d-dimensional irrep covers d of them.
    text += "# model=" + m.name + " a=" + format_double(*c.a) + " group=" + table.name() +
            " columns: index energy(re im) irrep degeneracy converged\n";
    std::size_t states = 0;
    for (std::size_t k = 0; k < rows.size() && states < c.levels; ++k) {
      text += std::to_string(k) + " " + fmt_complex(rows[k].e) + " " + rows[k].irrep + " " +
              std::to_string(rows[k].dim) + " " + (rows[k].conv ? "1" : "0") + "\n";
      states += static_cast<std::size_t>(rows[k].dim);
    }
  } else {
    throw UsageError("--format for spectrum: record or table");
  }
  emit(c, "spectrum_" + m.name + ".txt", text);
  return partial ? kExitPartial : kExitOk;
}

int cmd_scan(const RunConfig& c) {
  const ModelSpec m = resolve_model(c);
  std::vector<double> grid;
  if (!c.a_grid.empty()) {
    grid = parse_grid(c.a_grid);
  } else if (c.a) {
    grid = {*c.a};
  } else {
    throw UsageError("scan needs --a-grid lo:hi:step");
  }
  const auto table = m.table();
  ConvergeOptions o;
  o.tol = c.tol;
  std::vector<Track> all;
  for (const auto& ir : resolve_irreps(c, m)) {
    for (int row : resolve_rows(c, table, ir)) {
      auto t = scan_tracks(m, ir, row, grid, c.levels, o);
      all.insert(all.end(), t.begin(), t.end());
    }
  }
  const bool broken = std::any_of(all.begin(), all.end(), [](const Track& t) { return t.broken(); });
  emit(c, "tracks_" + m.name + ".txt", format_tracks(all));
  return broken ? kExitPartial : kExitOk;
}

int cmd_series(const RunConfig& c) {
  const ModelSpec m = resolve_model(c);
  // Without --irrep the series is taken in the totally symmetric block.
  auto irreps = resolve_irreps(c, m);
  if (c.irreps.empty()) irreps.resize(1);
  std::string text;
  for (const auto& ir : irreps) {
    const int row = c.row.value_or(0);
    for (const auto& s : rs_series(m, ir, row, c.level, c.order, c.max_shell.value_or(-1))) {
      text += "model=" + m.name + " irrep=" + ir + " row=" + std::to_string(row) + " level=" +
              std::to_string(s.level) + " member=" + std::to_string(s.member) + " shell=" + std::to_string(s.shell) +
              " degeneracy=" + std::to_string(s.degeneracy) + " lifting_order=" + std::to_string(s.lifting_order) +
              " exact=" + (s.exact ? "1" : "0") + "\n";
      text += "E(a) = " + format_series(s) + "\n";
      for (std::size_t k = 0; k < s.approx.size(); ++k) {
        char buf[80];
        std::snprintf(buf, sizeof buf, "%.17Lg %+.17Lgi", s.approx[k].real(), s.approx[k].imag());
        text += "c" + std::to_string(k) + " = " + (s.exact ? to_string(s.coeffs[k]) : std::string("-")) + "  ~ " + buf +
                "\n";
      }
    }
  }
  emit(c, "series_" + m.name + ".txt", text);
  return kExitOk;
}

int cmd_transition(const RunConfig& c) {
  const ModelSpec m = resolve_model(c);
  PhaseBoundaryOptions o;
  if (!c.a_grid.empty()) o.grid = parse_grid(c.a_grid);
  if (c.max_shell) o.max_shell = *c.max_shell;
  const auto pb = phase_boundary(m, c.levels, o);
  std::string text = "model=" + m.name + " levels=" + std::to_string(c.levels) + "\n";
  if (pb.trivial) {
    text += "a_transition = trivial (a=0) via " + pb.trivial_irrep + ", Im E ~ a^" + format_double(pb.exponent) + "\n";
  } else if (pb.found) {
    text += "a_transition = " + format_double(pb.a_transition) + "\n";
  } else {
    text += "a_transition = none in window [" + format_double(o.grid.front()) + ", " + format_double(o.grid.back()) +
            "]\n";
  }
  bool partial = false;
  for (const auto& ib : pb.per_irrep) {
    partial = partial || ib.partial;
    text += "  " + ib.irrep + ": levels=" + std::to_string(ib.levels) + " shell=" + std::to_string(ib.shell);
    if (ib.complex_at_smallest_a) {
      text += " complex at a=" + format_double(o.grid.front()) + " exponent=" + format_double(ib.exponent);
    } else if (ib.first) {
      text += " a_c=" + format_double(ib.first->a_c) + " levels=" + std::to_string(ib.first->levels.first) + "," +
              std::to_string(ib.first->levels.second) + " E=" + fmt_complex(ib.first->value);
    } else {
      text += " real throughout";
    }
    text += ib.partial ? " (partial)\n" : "\n";
  }
  emit(c, "transition_" + m.name + ".txt", text);
  return partial ? kExitPartial : kExitOk;
}

int cmd_classify3d(const RunConfig& c) {
  const CharacterTable t = tables::td();
  const int top = c.max_shell.value_or(4);
  std::string text = "# group=" + t.name() + " columns: shell dimension irreps\n";
  for (int s = 0; s <= top; ++s) {
    const auto labels = classify_shell_3d(t, s);
    int dim = 0;
    std::string list;
    for (const auto& l : labels) {
      dim += t.irrep(l).dimension;
      list += " " + l;
    }
    text += std::to_string(s) + " " + std::to_string(dim) + list + "\n";
  }
  emit(c, "classify3d.txt", text);
  return kExitOk;
}

int cmd_charpoly(const RunConfig& c) {
  const ModelSpec m = resolve_model(c);
  const int shell = c.max_shell.value_or(2);
  std::string text;
  if (c.irreps.empty()) {
    const auto p = char_poly_exact(m, shell);
    text += "model=" + m.name + " basis=full shell=" + std::to_string(shell) + " dimension=" +
            std::to_string(p.dimension()) + " odd_g=" + (p.has_odd_g() ? "1" : "0") + "\n" + to_string(p) + "\n";
  } else {
    for (const auto& ir : resolve_irreps(c, m)) {
      const int row = c.row.value_or(0);
      const auto p = char_poly_exact(m, ir, row, shell);
      text += "model=" + m.name + " basis=" + ir + " row=" + std::to_string(row) + " shell=" + std::to_string(shell) +
              " dimension=" + std::to_string(p.dimension()) + " odd_g=" + (p.has_odd_g() ? "1" : "0") + "\n" +
              to_string(p) + "\n";
    }
  }
  emit(c, "charpoly_" + m.name + ".txt", text);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of PT-symmetric oscillators with point-group symmetry"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string config_file;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--model", cfg.model, "catalog model name");
    sub->add_option("--alpha", cfg.alpha, "pullen_edmonds alpha (rational or decimal)");
    sub->add_option("--beta", cfg.beta, "pullen_edmonds beta (rational or decimal)");
    sub->add_option("--irrep", cfg.irreps, "irrep label(s); default all");
    sub->add_option("--row", cfg.row, "row of a multidimensional irrep");
    sub->add_option("--levels", cfg.levels, "number of levels K");
    sub->add_option("--level", cfg.level, "unperturbed level index within the block (series)");
    sub->add_option("--tol", cfg.tol, "convergence tolerance");
    sub->add_option("--max-shell", cfg.max_shell, "fixed shell cutoff");
    sub->add_option("--order", cfg.order, "perturbation order");
    sub->add_option("--a", cfg.a, "coupling a");
    sub->add_option("--a-grid", cfg.a_grid, "grid lo:hi:step");
    sub->add_option("--out", cfg.out, "output file (default: $PTSYM_OUT_DIR/<name> or stdout)");
    sub->add_option("--format", cfg.format, "record|table for spectrum");
    sub->add_option("--config", config_file, "JSON config file; flags win");
  };
  std::map<std::string, CLI::App*> subs;
  for (const char* name : {"spectrum", "scan", "series", "transition", "classify3d", "charpoly"}) {
    subs[name] = app.add_subcommand(name);
    add_common(subs[name]);
  }
  subs["spectrum"]->description("converged (or fixed-shell) block spectra as records or a level table");
  subs["scan"]->description("eigenvalue tracks over an a grid");
  subs["series"]->description("exact perturbation series of one unperturbed level");
  subs["transition"]->description("PT phase boundary over the lowest K levels");
  subs["classify3d"]->description("irreps of the 3D oscillator shells (up to --max-shell, default 4)");
  subs["charpoly"]->description("exact characteristic polynomial in g = i a");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }
  try {
    for (const auto& [name, sub] : subs) {
      if (!sub->parsed()) continue;
      cfg.command = name;
      if (!config_file.empty()) apply_config_file(config_file, cfg, *sub);
      if (name == "spectrum") return cmd_spectrum(cfg);
      if (name == "scan") return cmd_scan(cfg);
      if (name == "series") return cmd_series(cfg);
      if (name == "transition") return cmd_transition(cfg);
      if (name == "classify3d") return cmd_classify3d(cfg);
      if (name == "charpoly") return cmd_charpoly(cfg);
    }
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
