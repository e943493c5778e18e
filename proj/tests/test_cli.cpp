#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "wqft");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = wqft::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string body(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') out += line + "\n";
  }
  return out;
}

class TempDir {
 public:
  TempDir() : path_(std::filesystem::temp_directory_path() / "wqft_cli_test") {
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

TEST(Cli, CoeffsRows) {
  const auto r = run({"coeffs"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("table,index,value\n", 0), 0u);
  EXPECT_NE(r.out.find("\nP00,1,-1.32599\n"), std::string::npos);
  EXPECT_NE(r.out.find("\nP0,0,0\n"), std::string::npos);
  const auto h0 = wqft::daubechies_filters(3).h[0];
  EXPECT_NE(r.out.find(fmt::format("\nh,0,{:.12g}\n", h0)), std::string::npos);
  EXPECT_NE(r.out.find("\nD0,0,5.257601345\n"), std::string::npos);
}

TEST(Cli, CoeffsJson) {
  const auto r = run({"coeffs", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_DOUBLE_EQ(j["P00"][1].get<double>(), -1.32599);
  EXPECT_EQ(j["h"].size(), 6u);
}

TEST(Cli, EntropyScanBodiesAreReproducible) {
  const std::vector<std::string> args = {"entropy-scan", "--L", "40", "--lmax", "1",
                                         "--ell-grid", "2:20:2"};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(body(a.out), body(b.out));
  EXPECT_NE(a.out.find("# V=160\n"), std::string::npos);
  EXPECT_NE(a.out.find("# wall_time_s="), std::string::npos);
  EXPECT_EQ(wqft::read_csv(a.out).rows.size(), 10u);
}

TEST(Cli, CsvAndJsonAgree) {
  const std::vector<std::string> args = {"entropy-scan", "--L", "30", "--m0", "0.5",
                                         "--ell-grid", "3:15:3"};
  auto json_args = args;
  json_args.insert(json_args.end(), {"--format", "json"});
  const auto csv = wqft::read_csv(run(args).out);
  const auto json = wqft::read_json(run(json_args).out);
  EXPECT_EQ(csv.columns, json.columns);
  EXPECT_EQ(csv.rows, json.rows);
}

TEST(Cli, FlagsOverrideConfigFile) {
  TempDir dir;
  {
    std::ofstream cfg(dir.file("run.cfg"));
    cfg << "L = 30\nlmax = 1\nell-grid = 5:15:5\n";
  }
  const auto r = run({"entropy-scan", "--config", dir.file("run.cfg"), "--lmax", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto t = wqft::read_csv(r.out);
  EXPECT_EQ(t.meta("L"), "30");
  EXPECT_EQ(t.meta("lmax"), "0");
  EXPECT_EQ(t.meta("V"), "60");
  EXPECT_EQ(t.rows.size(), 3u);
}

TEST(Cli, FitFromScanFile) {
  TempDir dir;
  const auto scan = run({"entropy-scan", "--L", "200", "--truncation", "scale-only",
                         "--ell-grid", "10:20:2", "--log-base", "2", "--out",
                         dir.file("scan.csv")});
  ASSERT_EQ(scan.code, 0) << scan.err;
  EXPECT_TRUE(scan.out.empty());
  const auto fit = run({"fit-c", "--in", dir.file("scan.csv")});
  ASSERT_EQ(fit.code, 0) << fit.err;
  const auto t = wqft::read_csv(fit.out);
  EXPECT_EQ(t.meta("input_log_base"), "2");
  EXPECT_EQ(t.meta("L"), "200");
  const double c = t.column("c")[0];
  EXPECT_GT(c, 0.8);
  EXPECT_LT(c, 1.2);
  EXPECT_EQ(t.column("points")[0], 6.0);
}

TEST(Cli, FailureLeavesNoOutputFile) {
  TempDir dir;
  const auto r = run({"fit-c", "--L", "100", "--ell-grid", "1:50:10", "--out",
                      dir.file("fit.csv")});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
  EXPECT_FALSE(std::filesystem::exists(dir.file("fit.csv")));
}

TEST(Cli, BadArgumentsFail) {
  EXPECT_NE(run({}).code, 0);
  EXPECT_NE(run({"entropy-scan", "--L", "5"}).code, 0);
  EXPECT_NE(run({"entropy-scan", "--truncation", "half"}).code, 0);
  EXPECT_NE(run({"entropy-scan", "--ell-grid", "1:2"}).code, 0);
  EXPECT_NE(run({"coeffs", "--format", "xml"}).code, 0);
  EXPECT_NE(run({"resources", "--d", "4"}).code, 0);
  EXPECT_NE(run({"coeffs", "--config", "/nonexistent/file"}).code, 0);
}

TEST(Cli, Resources) {
  const auto r = run({"resources", "--L", "10", "--lmax", "6", "--d", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto t = wqft::read_csv(r.out);
  EXPECT_EQ(t.column("V")[0], 1280.0);
  EXPECT_EQ(t.column("V_prime")[0], 640.0);
  EXPECT_LE(std::stod(t.meta("nnz_d1")), t.column("nnz_bound")[0]);
}

TEST(Cli, Decompose) {
  const auto r = run({"decompose", "--L", "20", "--lmax", "1", "--m0", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto t = wqft::read_csv(r.out);
  EXPECT_EQ(t.meta("squeeze_count"), "80");
  EXPECT_LT(std::stod(t.meta("symplectic_residual")), 1e-9);
  EXPECT_LT(std::stod(t.meta("covariance_residual")), 1e-9);
  EXPECT_EQ(t.rows.size(), 80u);
}

TEST(Cli, CorrelatorScanBothBases) {
  for (const std::string basis : {"wavelet", "discrete"}) {
    const auto r = run({"correlator-scan", "--L", "120", "--truncation", "scale-only",
                        "--basis", basis, "--window", "5:40"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto t = wqft::read_csv(r.out);
    EXPECT_EQ(t.rows.size(), 59u);
    EXPECT_EQ(t.meta("fit_window"), "5:40");
    EXPECT_EQ(t.meta("basis"), basis);
    EXPECT_EQ(t.meta("reference"), "60");
  }
}

TEST(Cli, SvgSideOutput) {
  TempDir dir;
  const auto r = run({"entropy-scan", "--L", "20", "--ell-grid", "1:10:1", "--svg",
                      dir.file("s.svg")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(dir.file("s.svg")));
}

TEST(Cli, SeedEchoedInMetadata) {
  const auto r = run({"resources", "--seed", "42", "--d", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(wqft::read_csv(r.out).meta("seed"), "42");
}

}  // namespace
