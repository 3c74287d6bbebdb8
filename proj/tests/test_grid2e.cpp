#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

#include "deltadimer/errors.hpp"
#include "deltadimer/grid2e.hpp"
#include "deltadimer/one_electron.hpp"

using namespace deltadimer;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("grid construction snaps and validates") {
  const GridSpec g = make_grid(10.0, 0.1, 0.27);
  CHECK(g.a_snapped == Catch::Approx(0.3));
  CHECK(std::abs(g.a_snapped - 0.27) <= 0.05 + 1e-12);

  CHECK_THROWS_AS(make_grid(10.0, 0.3, 0.0), std::invalid_argument);  // 10/0.3
  CHECK_THROWS_AS(make_grid(8.0, 0.1, 0.0), std::invalid_argument);   // small box
  CHECK_THROWS_AS(make_grid(10.0, 0.1, 9.95), std::invalid_argument); // at wall
  CHECK_THROWS_AS(make_grid(10.0, -0.1, 0.0), std::invalid_argument);

  // separation-adapted grid keeps the wells exactly on grid lines
  for (const double a : {0.04, 0.05, 0.0777, 0.1, 0.3116, 0.5, 1.0}) {
    const GridSpec ga = grid_for_separation(a);
    CHECK(std::abs(ga.a_snapped - a) <= 1e-12 * std::max(1.0, a));
    CHECK(ga.h <= 0.0625 + 1e-12);
    CHECK(ga.h > 0.03);
    CHECK(ga.box >= 10.0);
    // and so does its half-spacing refinement
    const GridSpec gf = make_grid(ga.box, ga.h / 2.0, a);
    CHECK(std::abs(gf.a_snapped - a) <= 1e-12 * std::max(1.0, a));
  }

  // oversized assembly is rejected before allocation
  CHECK_THROWS_AS(assemble_hamiltonian(make_grid(10.0, 5e-4, 0.0), 1.0),
                  std::length_error);
}

TEST_CASE("folded solve equals the full-matrix ground state") {
  const GridSpec g = make_grid(10.0, 0.5, 0.5);
  const GroundStateResult r = ground_state(0.5, 1.0, g);

  // residual of the returned pair against the full Hamiltonian
  const auto H = assemble_hamiltonian(g, 1.0);
  const Eigen::VectorXd res = H * r.vector - r.energy * r.vector;
  CHECK(res.norm() <= 2e-8);
  CHECK(std::abs(r.vector.norm() - 1.0) <= 1e-12);

  // exchange symmetry and a single sign
  const long n = 2 * std::lround(g.box / g.h) - 1;
  double vmax = 0.0;
  for (long p = 0; p < n; ++p)
    for (long q = 0; q < n; ++q) {
      CHECK(r.vector[p * n + q] == r.vector[q * n + p]);
      vmax = std::max(vmax, std::abs(r.vector[p * n + q]));
    }
  for (long k = 0; k < n * n; ++k) CHECK(r.vector[k] >= -1e-10 * vmax);
}

TEST_CASE("repulsion-free solves separate exactly on the grid") {
  const GridSpec g = make_grid(10.0, 0.1, 0.5);
  const auto one = detail::discrete_one_particle(g);
  const GroundStateResult r = ground_state(0.5, kInf, g);
  CHECK(r.energy == Catch::Approx(2.0 * one.mu1).margin(1e-9));
  CHECK(r.residual <= 1e-8);
}

TEST_CASE("grid bias shrinks at second order and with box growth") {
  // halving ratio of the energy bias; every spacing must keep the wells
  // exactly on grid lines, so a = 0.5 uses the 0.25/0.125/0.0625 family
  for (const double a : {0.0, 0.5}) {
    const double h0 = (a == 0.0) ? 0.2 : 0.25;
    const double e1 = detail::cached_energy(make_grid(10.0, h0, a), 1.0);
    const double e2 = detail::cached_energy(make_grid(10.0, h0 / 2, a), 1.0);
    const double e3 = detail::cached_energy(make_grid(10.0, h0 / 4, a), 1.0);
    const double ratio = (e1 - e2) / (e2 - e3);
    CHECK(ratio >= 3.4);
    CHECK(ratio <= 4.6);
  }
  // enlarging the box can only help (wall effect is repulsive)
  const double e10 = detail::cached_energy(make_grid(10.0, 0.1, 0.5), 1.0);
  const double e12 = detail::cached_energy(make_grid(12.0, 0.1, 0.5), 1.0);
  CHECK(e12 <= e10 + 1e-6);
}

TEST_CASE("eigensolve is deterministic") {
  const GridSpec g = make_grid(10.0, 0.25, 0.5);
  const GroundStateResult r1 = ground_state(0.5, 1.0, g);
  const GroundStateResult r2 = ground_state(0.5, 1.0, g);
  CHECK(r1.energy == r2.energy);
  CHECK((r1.vector - r2.vector).norm() == 0.0);
}

TEST_CASE("refinement-pair energy honors its own error estimate") {
  // repulsion-free case on a coarse pair, checked against the closed form
  const EnergyEstimate est = e_electronic_estimate(0.5, kInf, 1e-2, 0.1, 10.0);
  const double truth = -alpha0(0.5) * alpha0(0.5);
  CHECK(std::abs(est.value - truth) <= 1.5e-3);
  CHECK(std::abs(est.value - truth) <= est.error_estimate + 1e-3);
  CHECK(est.error_estimate <= 1e-2);
}

TEST_CASE("electronic energy guardrails") {
  CHECK_THROWS_AS(e_electronic(0.1, 1.0, 5e-4), std::invalid_argument);
  CHECK_THROWS_AS(e_electronic(0.02, 1.0), AccuracyNotReached);
  CHECK_THROWS_AS(e_electronic(-0.1, 1.0), std::domain_error);
  CHECK_THROWS_AS(e_electronic(0.1, -2.0), std::domain_error);
}

TEST_CASE("derivative from the eigenfunction: repulsion-free cross-check") {
  // d/da of the exact repulsion-free energy -alpha0(a)^2
  const double a = 0.5;
  const double truth = -2.0 * alpha0(a) * alpha0_prime(a);
  const GridSpec g = make_grid(10.0, 0.05, a);
  const double fh = e_prime_fh(a, kInf, g);
  CHECK(fh == Catch::Approx(truth).epsilon(0.05));

  // zero separation snaps have no line pair to difference across
  CHECK_THROWS_AS(e_prime_fh(0.01, 1.0, make_grid(10.0, 0.1, 0.01)),
                  std::domain_error);
}

TEST_CASE("eigenfunction dump carries grid metadata and all values") {
  const GridSpec g = make_grid(10.0, 1.0, 1.0);
  const GroundStateResult r = ground_state(1.0, 1.0, g);
  const std::string path = "/tmp/deltadimer_dump_test.csv";
  write_eigenvector_csv(r, 1.0, path);

  std::FILE* fp = std::fopen(path.c_str(), "r");
  REQUIRE(fp != nullptr);
  char header[128];
  REQUIRE(std::fgets(header, sizeof header, fp) != nullptr);
  CHECK(std::string(header) == "box,h,a_snapped,Z,energy\n");
  double box = 0, h = 0, as = 0, z = 0, en = 0;
  REQUIRE(std::fscanf(fp, "%lf,%lf,%lf,%lf,%lf\n", &box, &h, &as, &z, &en) == 5);
  CHECK(box == r.grid.box);
  CHECK(h == r.grid.h);
  CHECK(as == r.grid.a_snapped);
  CHECK(en == r.energy);
  long values = 0;
  double v;
  while (std::fscanf(fp, "%lf", &v) == 1) {
    ++values;
    if (std::fscanf(fp, "%*[,\n]") < 0) break;
  }
  std::fclose(fp);
  const long n = 2 * std::lround(g.box / g.h) - 1;
  CHECK(values == n * n);
  std::remove(path.c_str());
}
