#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ranktwo/cli.hpp"

using ranktwo::run_cli;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> data_rows(const std::string& text) {
  std::vector<std::string> rows;
  std::stringstream ss(text);
  std::string line;
  bool seen_header = false;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      seen_header = true;  // column header
      continue;
    }
    rows.push_back(line);
  }
  return rows;
}

std::vector<double> numbers(const std::string& row) {
  std::vector<double> out;
  std::stringstream ss(row);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      out.push_back(std::stod(cell));
    } catch (...) {
      out.push_back(std::nan(""));
    }
  }
  return out;
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/ranktwo_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("spectrum subcommand reproduces the worked example") {
  TempFile out("spectrum.csv");
  int rc = run_cli({"spectrum", "--example", "--s", "1.1", "--t", "1.2", "--out",
                    out.path});
  REQUIRE(rc == 0);
  std::string text = slurp(out.path);
  auto rows = data_rows(text);
  REQUIRE(rows.size() == 1);
  std::vector<double> vals = numbers(rows[0]);
  // columns: s, t, x0, interlaces(text), max_im, then re/im pairs
  CHECK(vals[0] == doctest::Approx(1.1));
  CHECK(vals[2] == doctest::Approx(-3.37).epsilon(2e-3));
  CHECK(text.find("true") != std::string::npos);
  std::vector<double> expect{-3.25, 1.38, 2.50, 3.61};
  for (double want : expect) {
    bool found = false;
    for (double got : vals)
      if (std::isfinite(got) && std::abs(got - want) < 0.01) found = true;
    CHECK(found);
  }
}

TEST_CASE("spectrum grid sweep emits one row per grid point") {
  TempFile out("sweep.csv");
  int rc = run_cli({"spectrum", "--example", "--s", "-3:3:13", "--t", "1.2",
                    "--out", out.path});
  REQUIRE(rc == 0);
  auto rows = data_rows(slurp(out.path));
  CHECK(rows.size() == 13);
  double prev = -1e9;
  for (const auto& r : rows) {
    double s = numbers(r)[0];
    CHECK(s > prev);
    prev = s;
  }
}

TEST_CASE("spectrum s = t = 0 returns the base eigenvalues") {
  TempFile out("base.csv");
  REQUIRE(run_cli({"spectrum", "--example", "--s", "0", "--t", "0", "--out",
                   out.path}) == 0);
  auto vals = numbers(data_rows(slurp(out.path))[0]);
  for (double want : {1.0, 2.0, 3.0, 4.0}) {
    bool found = false;
    for (double got : vals)
      if (std::isfinite(got) && std::abs(got - want) < 1e-9) found = true;
    CHECK(found);
  }
}

TEST_CASE("svsweep on a seeded random instance") {
  TempFile out("sv.csv");
  int rc = run_cli({"svsweep", "--random", "6", "--seed", "5", "--tau",
                    "1e1:1e5:5", "--out", out.path});
  REQUIRE(rc == 0);
  std::string text = slurp(out.path);
  CHECK(text.find("slopes") != std::string::npos);
  auto rows = data_rows(text);
  REQUIRE(rows.size() == 5);
  CHECK(numbers(rows[0])[0] == doctest::Approx(10.0));
  CHECK(numbers(rows[4])[0] == doctest::Approx(1e5));
}

TEST_CASE("density of the untransformed wigner law") {
  TempFile out("density.csv");
  int rc = run_cli({"density", "--measure", "wigner", "--transform", "t=1",
                    "--xgrid", "-2:2:41", "--eps", "1e-5,1e-7", "--out", out.path});
  REQUIRE(rc == 0);
  auto rows = data_rows(slurp(out.path));
  REQUIRE(rows.size() == 41);
  for (const auto& r : rows) {
    auto v = numbers(r);
    if (!std::isfinite(v[1])) continue;  // masked cell
    double want = std::abs(v[0]) <= 2.0
                      ? std::sqrt(4.0 - v[0] * v[0]) / (2 * 3.14159265358979)
                      : 0.0;
    CHECK(std::abs(v[1] - want) < 1e-4);
  }
}

TEST_CASE("density reports atoms for the atomic U case") {
  TempFile out("atoms.csv");
  int rc = run_cli({"density", "--measure", "wigner", "--transform", "u=2.5,2.5",
                    "--xgrid", "-2:2:21", "--eps", "1e-5,1e-7", "--out", out.path});
  REQUIRE(rc == 0);
  std::string text = slurp(out.path);
  CHECK(text.find("atom:") != std::string::npos);
  // atoms at +-tau/sqrt(tau-1) = +-2.0412...
  CHECK(text.find("2.04124") != std::string::npos);
}

namespace {

// Sign changes of lhs - rhs must sit within 0.01 of each expected eigenvalue.
void check_sign_changes(const std::string& text, const std::vector<double>& expect,
                        double step) {
  auto rows = data_rows(text);
  std::vector<double> xs, diffs;
  for (const auto& r : rows) {
    auto v = numbers(r);
    if (v.size() == 3 && std::isfinite(v[1]) && std::isfinite(v[2])) {
      xs.push_back(v[0]);
      diffs.push_back(v[1] - v[2]);
    }
  }
  for (double want : expect) {
    bool found = false;
    for (std::size_t i = 1; i < xs.size(); ++i) {
      if (diffs[i - 1] * diffs[i] >= 0 || xs[i] - xs[i - 1] > step * 1.01)
        continue;
      double cross = xs[i - 1] + (xs[i] - xs[i - 1]) * diffs[i - 1] /
                                     (diffs[i - 1] - diffs[i]);
      if (std::abs(cross - want) < 0.01) found = true;
    }
    CHECK(found);
  }
}

}  // namespace

TEST_CASE("interlace emits both curves with masked poles") {
  TempFile out("curves.csv");
  int rc = run_cli({"interlace", "--example", "--s", "1.1", "--t", "1.2",
                    "--xgrid", "-6:6:2401", "--out", out.path});
  REQUIRE(rc == 0);
  std::string text = slurp(out.path);
  CHECK(text.find("nan") == std::string::npos);
  CHECK(text.find("perturbed eigenvalues") != std::string::npos);
  REQUIRE(data_rows(text).size() == 2401);
  // crossings of the two curves are the perturbed eigenvalues (reference
  // values rounded to two decimals, hence the 0.01 resolution)
  check_sign_changes(text, {-3.25, 1.38, 2.50, 3.61}, 0.005);

  TempFile out2("curves2.csv");
  REQUIRE(run_cli({"interlace", "--example", "--s", "-2", "--t", "-3", "--xgrid",
                   "-6:17:4601", "--out", out2.path}) == 0);
  check_sign_changes(slurp(out2.path), {0.86, 2.16, 3.38, 16.10}, 0.005);
}

TEST_CASE("interlace degenerate hyperbola branch stays finite") {
  TempFile out("flat.csv");
  REQUIRE(run_cli({"interlace", "--example", "--s", "0", "--t", "0", "--xgrid",
                   "-5:5:101", "--out", out.path}) == 0);
  std::string text = slurp(out.path);
  CHECK(text.find("nan") == std::string::npos);
  CHECK(text.find("inf") == std::string::npos);
  CHECK(data_rows(text).size() == 101);
}

TEST_CASE("inline vectors and csv matrices feed the subcommands") {
  TempFile mat("diag.csv");
  {
    std::ofstream f(mat.path);
    f << "1,0,0,0\n0,2,0,0\n0,0,3,0\n0,0,0,4\n";
  }
  TempFile out("inline.csv");
  int rc = run_cli({"spectrum", "--input", mat.path, "--u", "0.5,0.5,0.5,0.5",
                    "--s", "1.1", "--t", "1.2", "--out", out.path});
  REQUIRE(rc == 0);
  auto vals = numbers(data_rows(slurp(out.path))[0]);
  bool found = false;
  for (double got : vals)
    if (std::isfinite(got) && std::abs(got - (-3.25)) < 0.01) found = true;
  CHECK(found);

  // vanishing-branch svsweep gains the sigma_n * tau column
  TempFile eye("eye.csv");
  {
    std::ofstream f(eye.path);
    f << "1,0\n0,1\n";
  }
  TempFile svout("svinline.csv");
  REQUIRE(run_cli({"svsweep", "--input", eye.path, "--u", "1,0", "--v", "0,1",
                   "--tau", "1e1:1e4:4", "--out", svout.path}) == 0);
  std::string text = slurp(svout.path);
  CHECK(text.find("sigma_n_times_tau") != std::string::npos);
  CHECK(text.find("vanishing branch") != std::string::npos);
  auto last = numbers(data_rows(text).back());
  CHECK(std::abs(last.back() - 1.0) < 1e-3);  // sigma_n * tau -> |B^-1 u|^-2 = 1
}

TEST_CASE("json re/im input parses complex matrices") {
  TempFile in("cplx.json");
  {
    std::ofstream f(in.path);
    // A = [[0, 1], [-1, 0]] + i*0, u = e1: spectrum of A is +-i
    f << R"({"A": {"re": [[0, 1], [-1, 0]], "im": [[0, 0], [0, 0]]},)"
      << R"( "u": {"re": [1, 0], "im": [0, 0]}})";
  }
  TempFile out("cplx.csv");
  REQUIRE(run_cli({"spectrum", "--input", in.path, "--s", "0", "--t", "0",
                   "--out", out.path}) == 0);
  auto vals = numbers(data_rows(slurp(out.path))[0]);
  int imag_units = 0;
  for (double v : vals)
    if (std::isfinite(v) && std::abs(std::abs(v) - 1.0) < 1e-9) ++imag_units;
  CHECK(imag_units >= 2);
}

TEST_CASE("json format carries config echo and rows") {
  TempFile out("doc.json");
  int rc = run_cli({"spectrum", "--example", "--s", "1.1", "--t", "1.2",
                    "--format", "json", "--out", out.path});
  REQUIRE(rc == 0);
  std::string text = slurp(out.path);
  CHECK(text.find("\"config\"") != std::string::npos);
  CHECK(text.find("\"rows\"") != std::string::npos);
  CHECK(text.find("\"subcommand\": \"spectrum\"") != std::string::npos);
}

TEST_CASE("deterministic output for identical config and seed") {
  TempFile a("det_a.csv"), b("det_b.csv");
  REQUIRE(run_cli({"svsweep", "--random", "5", "--seed", "9", "--tau", "1e1:1e4:4",
                   "--out", a.path}) == 0);
  REQUIRE(run_cli({"svsweep", "--random", "5", "--seed", "9", "--tau", "1e1:1e4:4",
                   "--out", b.path}) == 0);
  CHECK(slurp(a.path) == slurp(b.path));
}

TEST_CASE("exit code 2 on parse errors") {
  CHECK(run_cli({"spectrum", "--no-such-flag"}) == 2);
  CHECK(run_cli({"density", "--measure", "martian"}) == 2);
  CHECK(run_cli({"spectrum", "--input", "/nonexistent.json"}) == 2);
}

TEST_CASE("exit code 3 on numerical failures") {
  TempFile in("bad.json");
  {
    std::ofstream f(in.path);
    f << R"({"A": [[0, 1], [0, 0]], "u": [1, 0]})";  // not Hermitian
  }
  CHECK(run_cli({"interlace", "--input", in.path, "--s", "1.1", "--t", "1.2",
                 "--out", "/tmp/ranktwo_test_il.csv"}) == 3);
  std::remove("/tmp/ranktwo_test_il.csv");
}
TEST_CASE("numeric overflow in arguments is a parse error") { CHECK(run_cli({"spectrum", "--example", "--s", "1e999999", "--t", "0"}) == 2); }

TEST_CASE("svsweep slope summary stays in the linear-convergence window") {
  TempFile out("slopes.csv");
  REQUIRE(run_cli({"svsweep", "--random", "10", "--seed", "2", "--tau",
                   "1e1:1e5:9", "--out", out.path}) == 0);
  std::string text = slurp(out.path);
  auto pos = text.find("slopes (j>=2):");
  REQUIRE(pos != std::string::npos);
  std::stringstream ss(text.substr(pos + 14, text.find('\n', pos) - pos - 14));
  double slope;
  int count = 0;
  while (ss >> slope) {
    CHECK(slope > -1.2);
    CHECK(slope < -0.8);
    ++count;
  }
  CHECK(count == 9);
}

TEST_CASE("jacobi coefficient files drive the density subcommand") {
  TempFile in("jac.json");
  {
    std::ofstream f(in.path);
    f << R"({"a": [0, 0], "b": [1]})";  // two-point measure at -1, +1
  }
  TempFile out("jacdens.csv");
  REQUIRE(run_cli({"density", "--measure", "jacobi=" + in.path, "--transform",
                   "none", "--xgrid", "-2:2:9", "--eps", "1e-5,1e-7", "--out",
                   out.path}) == 0);
  std::string text = slurp(out.path);
  CHECK(text.find("atom: -1 mass 0.5") != std::string::npos);
  CHECK(text.find("atom: 1 mass 0.5") != std::string::npos);
}

TEST_CASE("--grid aliases the per-subcommand grid flag") {
  TempFile out("alias.csv");
  REQUIRE(run_cli({"spectrum", "--example", "--grid", "-1:1:5", "--t", "0",
                   "--out", out.path}) == 0);
  CHECK(data_rows(slurp(out.path)).size() == 5);
}
