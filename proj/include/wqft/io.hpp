#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <fmt/format.h>
#include <json.hpp>

#include "wqft/coupling.hpp"
#include "wqft/error.hpp"
#include "wqft/fit.hpp"
#include "wqft/gaussian.hpp"

namespace wqft {

/// Shortest text that reads back to the same double (17 significant digits).
inline std::string format_value(double v) { return fmt::format("{:.17g}", v); }

inline double parse_double(std::string_view s) {
  std::string tmp(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tmp, &used);
  } catch (const std::exception&) {
    throw ParseError(fmt::format("not a number: '{}'", s));
  }
  if (used != tmp.size()) throw ParseError(fmt::format("trailing characters in number '{}'", s));
  return v;
}

inline int parse_int(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(fmt::format("not an integer: '{}'", s));
  }
  return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

/// "lo:hi".
inline Window parse_window(std::string_view s) {
  const auto parts = split(s, ':');
  if (parts.size() != 2) throw ParseError(fmt::format("window must be lo:hi, got '{}'", s));
  Window w{parse_double(parts[0]), parse_double(parts[1])};
  if (!(w.hi >= w.lo)) throw ParseError(fmt::format("window '{}' has hi < lo", s));
  return w;
}

/// "a:b:step" inclusive of b when it lies on the grid.
inline std::vector<double> parse_grid(std::string_view s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) throw ParseError(fmt::format("grid must be a:b:step, got '{}'", s));
  const double a = parse_double(parts[0]);
  const double b = parse_double(parts[1]);
  const double step = parse_double(parts[2]);
  if (!(step > 0.0) || b < a) throw ParseError(fmt::format("grid '{}' needs step > 0, b >= a", s));
  const auto count = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) out.push_back(a + static_cast<double>(i) * step);
  return out;
}

/// Plain key=value lines; '#' starts a comment.
inline std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view v = line;
    if (const auto hash = v.find('#'); hash != std::string_view::npos) v = v.substr(0, hash);
    v = trim(v);
    if (v.empty()) continue;
    const auto eq = v.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(fmt::format("config line {}: expected key=value", lineno));
    }
    out[std::string(trim(v.substr(0, eq)))] = std::string(trim(v.substr(eq + 1)));
  }
  return out;
}

/// Write `content` to a sibling temporary and rename it over `path`, so a
/// failed run never leaves a partial file behind.
inline void atomic_write(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(fmt::format("cannot open '{}' for writing", tmp.string()));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw Error(fmt::format("write to '{}' failed", tmp.string()));
    }
  }
  std::filesystem::rename(tmp, path);
}

// --- coordinate format ---------------------------------------------------

/// "V nnz" then "row col value" sorted row-major.
inline std::string coordinate_text(const SparseMatrix& m) {
  std::vector<std::tuple<Eigen::Index, Eigen::Index, double>> entries;
  entries.reserve(static_cast<std::size_t>(m.nonZeros()));
  for (int c = 0; c < m.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(m, c); it; ++it) {
      entries.emplace_back(it.row(), it.col(), it.value());
    }
  }
  std::sort(entries.begin(), entries.end());
  std::string out = fmt::format("{} {}\n", m.rows(), entries.size());
  for (const auto& [r, c, v] : entries) out += fmt::format("{} {} {}\n", r, c, format_value(v));
  return out;
}

inline std::string coordinate_text(const CouplingMatrix& k) { return coordinate_text(k.sparse()); }

inline std::string coordinate_text(const Eigen::MatrixXd& dense) {
  if (dense.rows() != dense.cols()) throw DimensionError("coordinate format needs a square matrix");
  return coordinate_text(SparseMatrix(dense.sparseView(0.0, 0.0)));
}

inline std::string coordinate_text(const CovarianceMatrix& gamma) {
  return coordinate_text(gamma.dense());
}

inline SparseMatrix read_coordinate(std::istream& in) {
  long long v = 0, nnz = 0;
  if (!(in >> v >> nnz) || v < 0 || nnz < 0) throw ParseError("bad coordinate header");
  Triplets t;
  t.reserve(static_cast<std::size_t>(nnz));
  for (long long i = 0; i < nnz; ++i) {
    long long r = 0, c = 0;
    std::string value;
    if (!(in >> r >> c >> value)) {
      throw ParseError(fmt::format("coordinate file truncated at entry {}", i));
    }
    if (r < 0 || c < 0 || r >= v || c >= v) {
      throw ParseError(fmt::format("entry ({}, {}) outside a {}x{} matrix", r, c, v, v));
    }
    t.emplace_back(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c), parse_double(value));
  }
  SparseMatrix m(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(v));
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

inline SparseMatrix read_coordinate(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_coordinate(in);
}

// --- tables ----------------------------------------------------------------

/// Numeric table with ordered metadata. CSV puts the metadata on '#' lines
/// ahead of the header row; JSON carries it under "metadata".
struct Table {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_meta(std::string key, std::string value) {
    metadata.emplace_back(std::move(key), std::move(value));
  }
  void add_row(std::vector<double> row) {
    if (row.size() != columns.size()) throw DimensionError("row width does not match columns");
    rows.push_back(std::move(row));
  }
  std::string meta(std::string_view key) const {
    for (const auto& [k, v] : metadata) {
      if (k == key) return v;
    }
    throw std::out_of_range(fmt::format("no metadata key '{}'", key));
  }
  std::vector<double> column(std::string_view name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw std::out_of_range(fmt::format("no column '{}'", name));
    const auto c = static_cast<std::size_t>(it - columns.begin());
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[c]);
    return out;
  }
};

inline std::string csv_body(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    out += (i ? "," : "") + t.columns[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += (i ? "," : "") + format_value(row[i]);
    }
    out += '\n';
  }
  return out;
}

inline std::string to_csv(const Table& t) {
  std::string out;
  for (const auto& [k, v] : t.metadata) out += fmt::format("# {}={}\n", k, v);
  return out + csv_body(t);
}

inline Table read_csv(std::istream& in) {
  Table t;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    std::string_view v = trim(line);
    if (v.empty()) continue;
    if (v.front() == '#') {
      v = trim(v.substr(1));
      const auto eq = v.find('=');
      if (eq == std::string_view::npos) {
        t.add_meta(std::string(v), "");
      } else {
        t.add_meta(std::string(v.substr(0, eq)), std::string(v.substr(eq + 1)));
      }
      continue;
    }
    const auto cells = split(v, ',');
    if (!header) {
      for (const auto c : cells) t.columns.emplace_back(trim(c));
      header = true;
      continue;
    }
    std::vector<double> row;
    for (const auto c : cells) row.push_back(parse_double(trim(c)));
    if (row.size() != t.columns.size()) {
      throw ParseError(fmt::format("CSV row has {} cells, header has {}", row.size(),
                                   t.columns.size()));
    }
    t.rows.push_back(std::move(row));
  }
  if (!header) throw ParseError("CSV input has no header row");
  return t;
}

inline Table read_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_csv(in);
}

inline nlohmann::ordered_json to_json_value(const Table& t) {
  nlohmann::ordered_json j;
  j["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.metadata) j["metadata"][k] = v;
  j["columns"] = t.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) j["rows"].push_back(row);
  return j;
}

inline std::string to_json(const Table& t) { return to_json_value(t).dump(2) + "\n"; }

inline Table read_json(std::string_view text) {
  Table t;
  try {
    const auto j = nlohmann::ordered_json::parse(text);
    for (const auto& [k, v] : j.at("metadata").items()) t.add_meta(k, v.get<std::string>());
    t.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& row : j.at("rows")) t.add_row(row.get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(fmt::format("invalid table JSON: {}", e.what()));
  }
  return t;
}

inline Table spectrum_table(const SymplecticSpectrum& s) {
  Table t;
  t.columns = {"index", "sigma"};
  for (std::size_t i = 0; i < s.size(); ++i) t.add_row({static_cast<double>(i), s.sigma[i]});
  return t;
}

// --- quick-look chart ---------------------------------------------------

/// Self-contained SVG polyline of y against x.
inline std::string svg_line_chart(const std::vector<double>& x, const std::vector<double>& y,
                                  std::string_view title) {
  if (x.size() != y.size() || x.empty()) throw std::invalid_argument("svg chart needs data");
  constexpr double w = 640, h = 400, pad = 48;
  const auto [xmin, xmax] = std::minmax_element(x.begin(), x.end());
  const auto [ymin, ymax] = std::minmax_element(y.begin(), y.end());
  const double xs = *xmax > *xmin ? (w - 2 * pad) / (*xmax - *xmin) : 1.0;
  const double ys = *ymax > *ymin ? (h - 2 * pad) / (*ymax - *ymin) : 1.0;
  std::string pts;
  for (std::size_t i = 0; i < x.size(); ++i) {
    pts += fmt::format("{:.2f},{:.2f} ", pad + (x[i] - *xmin) * xs, h - pad - (y[i] - *ymin) * ys);
  }
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\">\n"
      "<rect width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n"
      "<text x=\"{2}\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">{3}</text>\n"
      "<polyline fill=\"none\" stroke=\"black\" points=\"{4}\"/>\n"
      "<text x=\"{2}\" y=\"{5}\" font-family=\"sans-serif\" font-size=\"11\">x: [{6:.4g}, {7:.4g}]"
      "  y: [{8:.4g}, {9:.4g}]</text>\n"
      "</svg>\n",
      w, h, pad, title, pts, h - 12, *xmin, *xmax, *ymin, *ymax);
}

}  // namespace wqft
