#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string binary() {
  const char* p = std::getenv("DIMER1D_BIN");
  REQUIRE(p != nullptr);
  return p;
}

struct RunResult {
  int exit_code;
  std::string output;  // stdout and stderr combined
};

RunResult run(const std::string& args) {
  const std::string out = "/tmp/deltadimer_cli_out.txt";
  const std::string cmdline = binary() + " " + args + " > " + out + " 2>&1";
  const int rc = std::system(cmdline.c_str());
  std::ifstream f(out);
  std::stringstream ss;
  ss << f.rdbuf();
  return {WEXITSTATUS(rc), ss.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// value of "name   1.25" style report lines
double report_value(const std::string& text, const std::string& name) {
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.rfind(name + " ", 0) == 0 || line.rfind(name + "\t", 0) == 0 ||
        (line.size() > name.size() && line.compare(0, name.size(), name) == 0 &&
         line[name.size()] == ' ')) {
      return std::stod(line.substr(name.size()));
    }
  }
  FAIL("report line not found: " << name);
  return 0.0;
}

}  // namespace

TEST_CASE("curve: header, shape, diagnostics, and bit-stable output") {
  const std::string csv = "/tmp/deltadimer_curve.csv";
  const RunResult r = run(
      "curve --Z 1 --epsilon 0.1 --a-min 0 --a-max 3 --n 300 --out " + csv);
  REQUIRE(r.exit_code == 0);

  const std::string text = slurp(csv);
  const auto lines = split(text, '\n');
  REQUIRE(lines.size() >= 301);  // header + 300 rows (+ trailing empty)
  CHECK(lines[0] == "a,j,g,e_ub,e_ni,e_exact,E_ub,E_ni,E_exact,one_electron");
  CHECK(text.find("\r") == std::string::npos);  // LF-only

  // row at a = 0: infinite total energies printed literally; exact cells
  // empty without --with-exact
  const auto row0 = split(lines[1], ',');
  REQUIRE(row0.size() == 10);
  CHECK(row0[0] == "0");
  CHECK(row0[5].empty());
  CHECK(row0[6] == "inf");
  CHECK(row0[7] == "inf");
  CHECK(row0[8].empty());

  // one_electron column is the single-particle threshold -alpha0^2/2
  CHECK(std::stod(row0[9]) == Catch::Approx(-2.0));
  CHECK(std::stod(row0[4]) == Catch::Approx(-4.0));
  CHECK(std::stod(row0[3]) == Catch::Approx(-3.0));

  // the binding diagnostic peaks where the closed form says it peaks
  double best_a = 0.0, best_j = -1.0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto cells = split(lines[i], ',');
    REQUIRE(cells.size() == 10);
    const double jv = std::stod(cells[1]);
    if (jv > best_j) {
      best_j = jv;
      best_a = std::stod(cells[0]);
    }
  }
  CHECK(best_a == Catch::Approx(0.254).margin(0.011));  // sample spacing
  CHECK(best_j == Catch::Approx(0.297).margin(1e-3));

  // identical bytes on a second run
  const std::string csv2 = "/tmp/deltadimer_curve2.csv";
  REQUIRE(run("curve --Z 1 --epsilon 0.1 --a-min 0 --a-max 3 --n 300 --out " +
              csv2)
              .exit_code == 0);
  CHECK(slurp(csv2) == text);
  std::remove(csv.c_str());
  std::remove(csv2.c_str());
}

TEST_CASE("curve: exact columns fill only on aligned separations") {
  const std::string csv = "/tmp/deltadimer_curve_exact.csv";
  // 0.03 is not alignable, 0.05 and 0.07 are
  const RunResult r = run(
      "curve --Z 1 --epsilon 0.1 --a-min 0.03 --a-max 0.07 --n 3 "
      "--with-exact --accuracy 2e-3 --out " +
      csv);
  REQUIRE(r.exit_code == 0);
  const auto lines = split(slurp(csv), '\n');
  REQUIRE(lines.size() >= 4);

  const auto row_003 = split(lines[1], ',');
  CHECK(row_003[5].empty());
  CHECK(row_003[8].empty());

  for (const int i : {2, 3}) {
    const auto row = split(lines[static_cast<std::size_t>(i)], ',');
    REQUIRE(!row[5].empty());
    REQUIRE(!row[8].empty());
    const double a = std::stod(row[0]);
    const double e_exact = std::stod(row[5]);
    const double e_ub_v = std::stod(row[3]);
    const double e_ni_v = std::stod(row[4]);
    // exact energy sits inside the sandwich
    CHECK(e_exact <= e_ub_v + 5e-3);
    CHECK(e_exact >= e_ni_v - 5e-3);
    CHECK(std::stod(row[8]) ==
          Catch::Approx(e_exact + 0.1 / (2.0 * a)).epsilon(1e-12));
  }
  std::remove(csv.c_str());
}

TEST_CASE("curve: configuration errors exit with code 2") {
  CHECK(run("curve --Z 1 --epsilon 0.1 --a-min 0.5 --a-max 0.5").exit_code == 2);
  CHECK(run("curve --Z 1 --epsilon 0.1 --n 1").exit_code == 2);
  CHECK(run("curve --Z 1").exit_code == 2);  // no field specifier
  CHECK(run("curve --Z 1 --epsilon 0.1 --L 10").exit_code == 2);  // two of them
  CHECK(run("nonsense").exit_code == 2);
}

TEST_CASE("equilibrium: hopeless repulsion exits with code 4") {
  const RunResult r = run("equilibrium --Z 1 --epsilon 0.5");
  CHECK(r.exit_code == 4);
  CHECK(r.output.find("no binding") != std::string::npos);
}

TEST_CASE("units: pinned conversions through the CLI") {
  const RunResult r = run("units --Z 1 --L 10 -a 0.1 -E -1.75");
  REQUIRE(r.exit_code == 0);
  CHECK(report_value(r.output, "epsilon") == Catch::Approx(0.1));
  CHECK(report_value(r.output, "B_tesla") ==
        Catch::Approx(5.176e11).epsilon(2e-3));
  CHECK(report_value(r.output, "R_angstrom") == Catch::Approx(0.0106));
  CHECK(report_value(r.output, "E_eV") == Catch::Approx(-47.6));
  // B specified directly round-trips to the same record
  const RunResult rb = run("units --Z 1 --B 2202646.5794806718");
  REQUIRE(rb.exit_code == 0);
  CHECK(report_value(rb.output, "L") == Catch::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("asymptotics: closed-form sweep reproduces the scaling constant") {
  const std::string csv = "/tmp/deltadimer_asym.csv";
  const RunResult r = run(
      "asymptotics --Z 1 --eps-min 1e-6 --eps-max 1e-3 --n 12 --ub-only "
      "--out " +
      csv);
  REQUIRE(r.exit_code == 0);
  const std::string text = slurp(csv);
  const auto lines = split(text, '\n');
  CHECK(lines[0] == "epsilon,a_eq_ub,a_eq,ratio_ub,ratio");

  double c_ub = 0.0, c_closed = 0.0;
  for (const auto& line : lines) {
    if (line.rfind("# c_ub_fit", 0) == 0)
      c_ub = std::stod(line.substr(line.find_last_of(' ')));
    if (line.rfind("# c_closed_form", 0) == 0)
      c_closed = std::stod(line.substr(line.find_last_of(' ')));
  }
  CHECK(c_closed == Catch::Approx(0.18898223650461363).epsilon(1e-12));
  CHECK(c_ub == Catch::Approx(c_closed).epsilon(0.01));
  std::remove(csv.c_str());
}

TEST_CASE("groundstate: explicit grid solve with eigenfunction dump") {
  const std::string csv = "/tmp/deltadimer_gs.csv";
  const RunResult r =
      run("groundstate --Z inf -a 0.5 --h 0.1 --box 10 --out " + csv);
  REQUIRE(r.exit_code == 0);
  CHECK(report_value(r.output, "a_snapped") == Catch::Approx(0.5));
  CHECK(report_value(r.output, "residual") <= 1e-8);
  // repulsion-free energy approaches the closed form from above at h = 0.1
  const double e = report_value(r.output, "energy");
  CHECK(e == Catch::Approx(-1.634).margin(0.05));

  const auto lines = split(slurp(csv), '\n');
  CHECK(lines[0] == "box,h,a_snapped,Z,energy");
  CHECK(lines[1].find("inf") != std::string::npos);
  std::remove(csv.c_str());

  // invalid grids are configuration errors
  CHECK(run("groundstate --Z 1 -a 0.5 --h 0.3 --box 10").exit_code == 2);
}
