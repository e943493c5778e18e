#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "wqft/wqft.hpp"

namespace wqft::cli {

/// Settings shared by every subcommand, after merging the config file with
/// the command line (command line wins).
struct Settings {
  FieldConfig field;
  Basis basis = Basis::wavelet;
  LogBase log_base = LogBase::e;
  std::optional<std::vector<double>> ell_grid;
  std::optional<Window> window;
  std::string out;
  std::string format = "csv";
  std::optional<long long> seed;
};

inline Settings resolve(const std::map<std::string, std::string>& kv) {
  static const std::vector<std::string> known = {
      "L", "lmax", "m0", "truncation", "basis", "ell-grid", "log-base",
      "out", "format", "window", "seed", "d0"};
  for (const auto& [k, v] : kv) {
    if (std::find(known.begin(), known.end(), k) == known.end()) {
      throw ParseError(fmt::format("unknown setting '{}'", k));
    }
  }
  Settings s;
  auto get = [&](const std::string& k) -> const std::string* {
    const auto it = kv.find(k);
    return it == kv.end() ? nullptr : &it->second;
  };
  if (auto v = get("L")) s.field.L = parse_int(*v);
  if (auto v = get("lmax")) s.field.l_max = parse_int(*v);
  if (auto v = get("m0")) s.field.m0 = parse_double(*v);
  if (auto v = get("truncation")) s.field.truncation = parse_truncation(*v);
  if (auto v = get("d0")) {
    if (*v == "refinement") {
      s.field.d0_source = D0Source::refinement;
    } else if (*v == "published") {
      s.field.d0_source = D0Source::published;
    } else {
      throw ParseError(fmt::format("d0 must be 'refinement' or 'published', got '{}'", *v));
    }
  }
  if (auto v = get("basis")) s.basis = parse_basis(*v);
  if (auto v = get("log-base")) s.log_base = parse_log_base(*v);
  if (auto v = get("ell-grid")) s.ell_grid = parse_grid(*v);
  if (auto v = get("window")) s.window = parse_window(*v);
  if (auto v = get("out")) s.out = *v;
  if (auto v = get("format")) {
    if (*v != "csv" && *v != "json") {
      throw ParseError(fmt::format("format must be 'csv' or 'json', got '{}'", *v));
    }
    s.format = *v;
  }
  if (auto v = get("seed")) s.seed = std::stoll(*v);
  s.field.validate();
  return s;
}

inline std::string_view d0_name(D0Source s) {
  return s == D0Source::published ? "published" : "refinement";
}

inline void add_config_meta(Table& t, const Settings& s, std::string_view command) {
  t.add_meta("command", std::string(command));
  t.add_meta("L", std::to_string(s.field.L));
  t.add_meta("lmax", std::to_string(s.field.l_max));
  t.add_meta("m0", format_value(s.field.m0));
  t.add_meta("truncation", std::string(to_string(s.field.truncation)));
  t.add_meta("d0", std::string(d0_name(s.field.d0_source)));
  if (s.seed) t.add_meta("seed", std::to_string(*s.seed));
}

inline void add_warnings(Table& t, const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) {
    t.add_meta("warning", w);
    err << "warning: " << w << '\n';
  }
}

inline void add_fit_meta(Table& t, const FitResult& f, std::string_view derived_name) {
  t.add_meta("fit_window", fmt::format("{}:{}", format_value(f.window.lo), format_value(f.window.hi)));
  t.add_meta("fit_points", std::to_string(f.points));
  t.add_meta("fit_slope", format_value(f.slope));
  t.add_meta("fit_intercept", format_value(f.intercept));
  t.add_meta(std::string(derived_name), format_value(f.derived));
  t.add_meta("fit_residual", format_value(f.residual));
}

inline void emit(const std::string& text, const Settings& s, std::ostream& out) {
  if (s.out.empty()) {
    out << text;
  } else {
    atomic_write(s.out, text);
  }
}

inline void emit_table(Table& t, const Settings& s, std::chrono::steady_clock::time_point start,
                       std::ostream& out) {
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  t.add_meta("wall_time_s", fmt::format("{:.3f}", wall));
  emit(s.format == "json" ? to_json(t) : to_csv(t), s, out);
}

inline std::vector<double> default_ell_grid(int L) {
  const int step = std::max(1, L / 100);
  return integer_grid(step, L / 2, step);
}

inline std::string coeffs_text(const std::string& format) {
  const auto f = daubechies_filters(3);
  const auto pub = published_tables();
  const auto exact = default_refinement_tables();
  const std::vector<std::pair<std::string, std::vector<double>>> tables = {
      {"h", f.h},
      {"g", f.g},
      {"D0", {pub.d0.begin(), pub.d0.end()}},
      {"D0_refinement", {exact.d0.begin(), exact.d0.end()}},
      {"P0", {pub.p0.begin(), pub.p0.end()}},
      {"P00", {pub.p00.begin(), pub.p00.end()}},
  };
  if (format == "json") {
    nlohmann::ordered_json j;
    for (const auto& [name, values] : tables) {
      auto& arr = j[name] = nlohmann::ordered_json::array();
      for (const double v : values) arr.push_back(std::stod(fmt::format("{:.12g}", v)));
    }
    return j.dump(2) + "\n";
  }
  std::string text = "table,index,value\n";
  for (const auto& [name, values] : tables) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      text += fmt::format("{},{},{:.12g}\n", name, i, values[i]);
    }
  }
  return text;
}

inline Table read_table_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open '{}'", path));
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return read_json(text);
  return read_csv(text);
}

inline Table entropy_table(const Settings& s, std::ostream& err) {
  ScanConfig scan{s.field, s.ell_grid.value_or(default_ell_grid(s.field.L)), s.log_base,
                  s.basis};
  const EntropyScan result = entropy_scan(scan);
  Table t;
  add_config_meta(t, s, "entropy-scan");
  t.add_meta("log_base", std::string(to_string(s.log_base)));
  t.add_meta("V", std::to_string(result.modes));
  add_warnings(t, result.warnings, err);
  t.columns = {"ell", "region_modes", "S"};
  for (const auto& r : result.rows) {
    t.add_row({r.ell, static_cast<double>(r.region_modes), r.entropy});
  }
  return t;
}

inline Table fit_c_table(const Table& scan, const Settings& s, int L, LogBase base) {
  const Window window = s.window.value_or(default_entropy_window(L));
  auto ell = scan.column("ell");
  auto entropy_values = scan.column("S");
  if (base == LogBase::two) {
    for (auto& v : entropy_values) v *= std::numbers::ln2;
  }
  const FitResult f = fit_central_charge(ell, entropy_values, L, window);
  Settings echo = s;
  echo.field.L = L;
  Table t;
  add_config_meta(t, echo, "fit-c");
  t.add_meta("input_log_base", std::string(to_string(base)));
  t.columns = {"slope", "intercept", "c", "residual", "window_lo", "window_hi", "points"};
  t.add_row({f.slope, f.intercept, f.derived, f.residual, f.window.lo, f.window.hi,
             static_cast<double>(f.points)});
  return t;
}

/// Runs the command line; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Free scalar field in a Daubechies wavelet basis: coupling matrices, Gaussian "
               "ground states, entanglement scans and fits."};
  app.require_subcommand(1);
  app.fallthrough();

  std::map<std::string, std::string> flags;
  std::string config_path;
  auto flag = [&](const std::string& name, const std::string& help) {
    return app.add_option_function<std::string>(
        "--" + name, [&flags, name](const std::string& v) { flags[name] = v; }, help);
  };
  flag("L", "number of base-scale cells");
  flag("lmax", "finest wavelet level");
  flag("m0", "field mass");
  flag("truncation", "full | scale-only");
  flag("basis", "wavelet | discrete");
  flag("ell-grid", "region lengths a:b:step");
  flag("log-base", "2 | e");
  flag("out", "output path (default stdout)");
  flag("format", "csv | json");
  flag("window", "fit window lo:hi");
  flag("seed", "seed echoed into metadata");
  flag("d0", "derivative overlaps: refinement | published");
  app.add_option("--config", config_path, "key=value settings file; flags override it");

  auto* coeffs = app.add_subcommand("coeffs", "print filter and connection-coefficient tables");
  auto* escan = app.add_subcommand("entropy-scan", "region entropy for each ell of the grid");
  std::string svg_path;
  escan->add_option("--svg", svg_path, "also write a quick-look SVG of S against ell");
  auto* fitc = app.add_subcommand("fit-c", "central-charge fit of an entropy scan");
  std::string fit_input;
  fitc->add_option("--in", fit_input, "entropy-scan output (CSV or JSON); computed if absent");
  auto* cscan = app.add_subcommand("correlator-scan", "two-point function against L/2");
  cscan->add_option("--svg", svg_path, "also write a quick-look SVG of C against distance");
  auto* decompose = app.add_subcommand("decompose", "passive-squeeze-passive ground-state preparation");
  auto* resources = app.add_subcommand("resources", "mode and momentum bookkeeping");
  std::vector<int> dims;
  resources->add_option("--d", dims, "spatial dimensions (default 1 2 3)")
      ->check(CLI::Range(1, 3));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    std::map<std::string, std::string> kv;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw Error(fmt::format("cannot open config '{}'", config_path));
      kv = parse_key_values(in);
    }
    for (const auto& [k, v] : flags) kv[k] = v;
    const Settings s = resolve(kv);

    if (coeffs->parsed()) {
      emit(coeffs_text(s.format), s, out);
    } else if (escan->parsed()) {
      Table t = entropy_table(s, err);
      if (!svg_path.empty()) {
        atomic_write(svg_path, svg_line_chart(t.column("ell"), t.column("S"), "S(ell)"));
      }
      emit_table(t, s, start, out);
    } else if (fitc->parsed()) {
      Table scan;
      int L = s.field.L;
      LogBase base = s.log_base;
      if (fit_input.empty()) {
        scan = entropy_table(s, err);
      } else {
        scan = read_table_file(fit_input);
        try {
          L = parse_int(scan.meta("L"));
          base = parse_log_base(scan.meta("log_base"));
        } catch (const std::out_of_range&) {
          // Bare tables fall back to the command-line settings.
        }
      }
      Table t = fit_c_table(scan, s, L, base);
      err << fmt::format("c = {:.6f} (slope {:.6f}, residual {:.3g}, {} points)\n",
                         t.rows[0][2], t.rows[0][0], t.rows[0][3], t.rows[0][6]);
      emit_table(t, s, start, out);
    } else if (cscan->parsed()) {
      ScanConfig scan{s.field, {}, s.log_base, s.basis};
      const CorrelatorScan result = correlator_scan(scan);
      const FitResult f = fit_correlator(result, s.window.value_or(default_correlator_window()));
      Table t;
      add_config_meta(t, s, "correlator-scan");
      t.add_meta("basis", std::string(to_string(s.basis)));
      t.add_meta("V", std::to_string(result.modes));
      t.add_meta("reference", std::to_string(result.reference));
      add_fit_meta(t, f, "z");
      add_warnings(t, result.warnings, err);
      t.columns = {"n", "distance", "C"};
      for (const auto& r : result.rows) t.add_row({double(r.n), r.distance, r.value});
      if (!svg_path.empty()) {
        atomic_write(svg_path, svg_line_chart(t.column("distance"), t.column("C"), "C(distance)"));
      }
      emit_table(t, s, start, out);
    } else if (decompose->parsed()) {
      const DecomposeReport r = decompose_report(s.field);
      Table t;
      add_config_meta(t, s, "decompose");
      t.add_meta("V", std::to_string(r.modes));
      t.add_meta("squeeze_count", std::to_string(r.squeeze_count));
      t.add_meta("r_min", format_value(r.r_min));
      t.add_meta("r_max", format_value(r.r_max));
      t.add_meta("r_mean", format_value(r.r_mean));
      t.add_meta("symplectic_residual", format_value(r.symplectic_residual));
      t.add_meta("covariance_residual", format_value(r.covariance_residual));
      t.add_meta("factorization_residual", format_value(r.factorization_residual));
      t.add_meta("eigenvalue_residual", format_value(r.eigenvalue_residual));
      add_warnings(t, r.warnings, err);
      t.columns = {"j", "r"};
      for (std::size_t j = 0; j < r.squeezing.size(); ++j) t.add_row({double(j), r.squeezing[j]});
      emit_table(t, s, start, out);
    } else if (resources->parsed()) {
      if (dims.empty()) dims = {1, 2, 3};
      Table t;
      add_config_meta(t, s, "resources");
      t.columns = {"d", "V", "N", "V_prime", "p_max", "nnz_bound"};
      for (const int d : dims) {
        const ResourceReport r = resource_estimate(s.field, d);
        if (r.nnz) t.add_meta("nnz_d1", std::to_string(*r.nnz));
        t.add_row({double(d), double(r.modes), double(r.lattice_sites), double(r.lattice_modes),
                   r.max_momentum, r.nnz_bound});
      }
      emit_table(t, s, start, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace wqft::cli
