#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "wqft/coupling.hpp"
#include "wqft/fit.hpp"
#include "wqft/io.hpp"
#include "wqft/resources.hpp"
#include "wqft/scan.hpp"

namespace {

TEST(Fit, ExactLine) {
  const std::vector<double> x = {0, 1, 2, 3, 4};
  const std::vector<double> y = {1, 3, 5, 7, 9};
  const auto f = wqft::fit_line(x, y);
  EXPECT_NEAR(f.slope, 2.0, 1e-14);
  EXPECT_NEAR(f.intercept, 1.0, 1e-14);
  EXPECT_NEAR(f.residual, 0.0, 1e-14);
  EXPECT_EQ(f.points, 5u);
}

TEST(Fit, SyntheticCentralCharge) {
  const double L = 500;
  std::vector<double> ell, s;
  for (int e = 10; e <= 50; e += 5) {
    ell.push_back(e);
    s.push_back(wqft::open_boundary_abscissa(e, L));
  }
  const auto f = wqft::fit_central_charge(ell, s, L, {10, 50});
  EXPECT_NEAR(f.derived, 1.0, 1e-12);
  EXPECT_NEAR(f.residual, 0.0, 1e-12);
  EXPECT_GE(f.residual, 0.0);
  EXPECT_EQ(f.points, 9u);
}

TEST(Fit, WindowTooSmall) {
  const std::vector<double> ell = {10, 20, 30, 40, 50};
  const std::vector<double> s = {1, 2, 3, 4, 5};
  EXPECT_THROW(wqft::fit_central_charge(ell, s, 500, {10, 30}), wqft::WindowTooSmallError);
  EXPECT_NO_THROW(wqft::fit_central_charge(ell, s, 500, {10, 40}));
}

TEST(Fit, CorrelatorConstant) {
  std::vector<double> d, c;
  for (int n = 1; n <= 60; ++n) {
    d.push_back(n);
    c.push_back(-std::log(double(n) * n) / (4 * std::numbers::pi) + 0.9);
  }
  const auto f = wqft::fit_correlator(d, c, {5, 50});
  EXPECT_NEAR(f.slope, -1.0 / (2 * std::numbers::pi), 1e-12);
  EXPECT_NEAR(f.derived, 0.9, 1e-12);
  EXPECT_EQ(f.points, 46u);
}

TEST(Resources, Examples) {
  wqft::FieldConfig cfg;
  cfg.L = 10;
  cfg.l_max = 6;
  const auto r = wqft::resource_estimate(cfg, 1);
  EXPECT_EQ(r.modes, 1280);
  EXPECT_EQ(r.lattice_modes, 640);
  EXPECT_EQ(r.modes, 2 * r.lattice_modes);
  ASSERT_TRUE(r.nnz.has_value());
  EXPECT_LE(static_cast<double>(*r.nnz), r.nnz_bound);
  for (int d = 2; d <= 3; ++d) {
    const auto rd = wqft::resource_estimate(cfg, d);
    EXPECT_EQ(rd.modes, (std::int64_t{1} << d) * rd.lattice_modes);
    EXPECT_FALSE(rd.nnz.has_value());
  }
  cfg.l_max = 0;
  EXPECT_NEAR(wqft::resource_estimate(cfg, 1).max_momentum, 0.663, 1e-3);
  EXPECT_THROW(wqft::resource_estimate(cfg, 0), std::invalid_argument);
}

TEST(Resources, NonzeroBoundAcrossConfigs) {
  for (int L : {10, 17, 32}) {
    for (int l = 0; l <= 4; ++l) {
      wqft::FieldConfig cfg;
      cfg.L = L;
      cfg.l_max = l;
      const auto r = wqft::resource_estimate(cfg, 1);
      EXPECT_LE(static_cast<double>(*r.nnz), r.nnz_bound) << L << " " << l;
    }
  }
}

TEST(Parsers, GridAndWindow) {
  const auto g = wqft::parse_grid("10:50:10");
  const std::vector<double> expected = {10, 20, 30, 40, 50};
  EXPECT_EQ(g, expected);
  EXPECT_EQ(wqft::parse_grid("0.5:1.5:0.5").size(), 3u);
  EXPECT_THROW(wqft::parse_grid("10:5:1"), wqft::ParseError);
  EXPECT_THROW(wqft::parse_grid("1:5"), wqft::ParseError);
  EXPECT_THROW(wqft::parse_grid("1:5:0"), wqft::ParseError);
  const auto w = wqft::parse_window("5:50");
  EXPECT_EQ(w.lo, 5.0);
  EXPECT_EQ(w.hi, 50.0);
  EXPECT_THROW(wqft::parse_window("50:5"), wqft::ParseError);
  EXPECT_THROW(wqft::parse_window("a:5"), wqft::ParseError);
}

TEST(Parsers, KeyValues) {
  std::istringstream in("# comment\nL = 40\n\nm0=1.5 # trailing\n");
  const auto kv = wqft::parse_key_values(in);
  EXPECT_EQ(kv.at("L"), "40");
  EXPECT_EQ(kv.at("m0"), "1.5");
  std::istringstream bad("L 40\n");
  EXPECT_THROW(wqft::parse_key_values(bad), wqft::ParseError);
}

TEST(Coordinate, RoundTripCouplingMatrix) {
  wqft::FieldConfig cfg;
  cfg.L = 12;
  cfg.l_max = 1;
  cfg.m0 = 0.7;
  const auto k = wqft::assemble_coupling(cfg);
  const std::string text = wqft::coordinate_text(k);
  EXPECT_EQ(text.substr(0, text.find('\n')), fmt::format("{} {}", k.dim(), k.nnz()));
  const auto back = wqft::read_coordinate(text);
  EXPECT_EQ((Eigen::MatrixXd(back) - k.dense()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Coordinate, RowMajorOrder) {
  Eigen::MatrixXd m(2, 2);
  m << 1, 2, 0, 3;
  EXPECT_EQ(wqft::coordinate_text(m), "2 3\n0 0 1\n0 1 2\n1 1 3\n");
  EXPECT_THROW(wqft::read_coordinate("2 3\n0 0 1\n"), wqft::ParseError);
  EXPECT_THROW(wqft::read_coordinate("2 1\n5 0 1\n"), wqft::ParseError);
}

TEST(Coordinate, CovarianceRoundTrip) {
  std::mt19937_64 rng(3);
  const auto g = wqft::ground_covariance(
      wqft::CouplingMatrix::from_dense(wqft::testing::random_spd(4, rng)));
  const auto back = wqft::read_coordinate(wqft::coordinate_text(g));
  EXPECT_EQ((Eigen::MatrixXd(back) - g.dense()).cwiseAbs().maxCoeff(), 0.0);
}

wqft::Table sample_table() {
  wqft::Table t;
  t.add_meta("command", "test");
  t.add_meta("L", "40");
  t.columns = {"ell", "S"};
  t.add_row({1.0, 0.1 + 0.2});
  t.add_row({2.0, std::numbers::pi});
  t.add_row({3.0, 1e-300});
  return t;
}

TEST(Table, CsvAndJsonCarryIdenticalValues) {
  const auto t = sample_table();
  const auto csv = wqft::read_csv(wqft::to_csv(t));
  const auto json = wqft::read_json(wqft::to_json(t));
  EXPECT_EQ(csv.columns, t.columns);
  EXPECT_EQ(json.columns, t.columns);
  EXPECT_EQ(csv.rows, t.rows);
  EXPECT_EQ(json.rows, t.rows);
  EXPECT_EQ(csv.meta("L"), "40");
  EXPECT_EQ(json.meta("command"), "test");
}

TEST(Table, CsvLayout) {
  const std::string csv = wqft::to_csv(sample_table());
  EXPECT_EQ(csv.rfind("# command=test\n# L=40\nell,S\n", 0), 0u);
  EXPECT_THROW(wqft::read_csv("# only metadata\n"), wqft::ParseError);
  EXPECT_THROW(wqft::read_csv("a,b\n1\n"), wqft::ParseError);
  EXPECT_THROW(wqft::read_json("{}"), wqft::ParseError);
}

TEST(Table, SpectrumCsv) {
  const auto t = wqft::spectrum_table({{0.5, 0.75}});
  EXPECT_EQ(wqft::csv_body(t), "index,sigma\n0,0.5\n1,0.75\n");
}

TEST(AtomicWrite, ReplacesContentWithoutLeftovers) {
  const auto dir = std::filesystem::temp_directory_path() / "wqft_atomic_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.csv";
  wqft::atomic_write(path, "first\n");
  wqft::atomic_write(path, "second\n");
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "second");
  EXPECT_FALSE(std::filesystem::exists(dir / "out.csv.tmp"));
  EXPECT_THROW(wqft::atomic_write(dir / "missing" / "x.csv", "x"), wqft::Error);
  std::filesystem::remove_all(dir);
}

TEST(Svg, ProducesDocument) {
  const auto svg = wqft::svg_line_chart({1, 2, 3}, {0.1, 0.3, 0.2}, "S(ell)");
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  EXPECT_THROW(wqft::svg_line_chart({}, {}, "x"), std::invalid_argument);
}

TEST(Scan, ConfigValidation) {
  wqft::ScanConfig s;
  s.field.L = 20;
  s.ell_grid = {1, 2, 2};
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s.ell_grid = {1, 30};
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s.ell_grid = {1, 5, 20};
  EXPECT_NO_THROW(s.validate());
}

TEST(Scan, EntropyScanIsDeterministic) {
  wqft::ScanConfig s;
  s.field.L = 30;
  s.field.l_max = 1;
  s.ell_grid = {3, 6, 9, 12, 15};
  const auto a = wqft::entropy_scan(s);
  const auto b = wqft::entropy_scan(s);
  ASSERT_EQ(a.rows.size(), 5u);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].entropy, b.rows[i].entropy);
    EXPECT_EQ(a.rows[i].region_modes, static_cast<std::size_t>(4 * s.ell_grid[i]));
  }
  s.log_base = wqft::LogBase::two;
  const auto c = wqft::entropy_scan(s);
  EXPECT_NEAR(c.rows[2].entropy, a.rows[2].entropy / std::numbers::ln2, 1e-14);
}

TEST(Scan, DecomposeIdentityLimit) {
  const auto r =
      wqft::decompose_report(wqft::CouplingMatrix::from_dense(Eigen::MatrixXd::Identity(8, 8)));
  EXPECT_EQ(r.squeeze_count, 8u);
  EXPECT_LT(std::abs(r.r_min), 1e-15);
  EXPECT_LT(std::abs(r.r_max), 1e-15);
}

}  // namespace
