// dimer1d: command-line front end for the one-dimensional contact-well dimer
// library (two electrons, two attractive delta wells, scaled units).
//
// Subcommands:
//   curve        CSV of bound/exact energies and diagnostics vs separation
//   equilibrium  minimize the total energy, report scaled + laboratory values
//   asymptotics  weak-repulsion scaling of the equilibrium separation
//   groundstate  one grid eigensolve, optional eigenfunction dump
//   units        convert scaled quantities to laboratory units
//
// Exit codes: 0 success, 2 configuration error, 4 no bound minimum,
// 3 any other solver failure.

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "deltadimer/bounds.hpp"
#include "deltadimer/errors.hpp"
#include "deltadimer/grid2e.hpp"
#include "deltadimer/molecule.hpp"
#include "deltadimer/one_electron.hpp"
#include "deltadimer/search.hpp"

namespace {

using namespace deltadimer;

constexpr const char* kNum = "%.17g";

struct FieldChoice {
  double epsilon = std::numeric_limits<double>::quiet_NaN();
  double L = std::numeric_limits<double>::quiet_NaN();
  double B = std::numeric_limits<double>::quiet_NaN();

  ModelParams resolve(double Z) const {
    if (!std::isnan(epsilon)) return params_from_epsilon(Z, epsilon);
    if (!std::isnan(L)) return params_from_L(Z, L);
    return params_from_B(Z, B);
  }
};

// Adds --epsilon/--L/--B to a subcommand; exactly one must be given.
void add_field_options(CLI::App* cmd, FieldChoice& fc) {
  auto* grp = cmd->add_option_group("field", "field-strength specifier");
  grp->add_option("--epsilon", fc.epsilon,
                  "scaled nuclear repulsion strength 1/L (= Z/L here)");
  grp->add_option("--L", fc.L, "squeezing length of the field");
  grp->add_option("--B", fc.B, "field strength in atomic units");
  grp->require_option(1);
}

std::FILE* open_or_stdout(const std::string& path, const char* mode) {
  if (path.empty()) return stdout;
  std::FILE* fp = std::fopen(path.c_str(), mode);
  if (fp == nullptr)
    throw std::runtime_error("cannot open output file: " + path);
  return fp;
}

// A separation admits an aligned (h, h/2) refinement pair when it is zero or
// lands exactly on the lines of its adapted grid (all a >= 0.04 do).
bool alignable(double a) {
  if (a == 0.0) return true;
  if (a < 0.04) return false;
  const GridSpec g = grid_for_separation(a);
  return std::abs(g.a_snapped - a) <= 1e-12 * std::max(1.0, a);
}

int cmd_curve(double Z, const FieldChoice& fc, double a_min, double a_max,
              long n, bool with_exact, double accuracy,
              const std::string& out) {
  if (!(a_min >= 0.0) || !(a_max > a_min) || n < 2)
    throw std::invalid_argument(
        "curve: need 0 <= a-min < a-max and n >= 2 samples");
  const ModelParams p = fc.resolve(Z);

  std::FILE* fp = open_or_stdout(out, "w");
  std::fprintf(fp,
               "a,j,g,e_ub,e_ni,e_exact,E_ub,E_ni,E_exact,one_electron\n");
  for (long i = 0; i < n; ++i) {
    const double a =
        (i == n - 1) ? a_max
                     : a_min + (a_max - a_min) * static_cast<double>(i) /
                                   static_cast<double>(n - 1);
    const double al = alpha0(a);
    const double eni = -al * al;
    const bool have_exact = with_exact && alignable(a);
    double eex = 0.0;
    if (have_exact) eex = e_electronic(a, Z, accuracy);

    std::fprintf(fp, kNum, a);
    std::fputc(',', fp);
    std::fprintf(fp, kNum, j_func(a, Z));
    std::fputc(',', fp);
    std::fprintf(fp, kNum, g_func(a, Z));
    std::fputc(',', fp);
    std::fprintf(fp, kNum, e_ub(a, Z));
    std::fputc(',', fp);
    std::fprintf(fp, kNum, eni);
    std::fputc(',', fp);
    if (have_exact) std::fprintf(fp, kNum, eex);
    std::fputc(',', fp);
    std::fprintf(fp, kNum, E_ub(a, p));
    std::fputc(',', fp);
    std::fprintf(fp, kNum, E_ni(a, p.epsilon));
    std::fputc(',', fp);
    if (have_exact)
      std::fprintf(fp, kNum,
                   a > 0.0 ? eex + p.epsilon / (2.0 * a)
                           : std::numeric_limits<double>::infinity());
    std::fputc(',', fp);
    std::fprintf(fp, kNum, -0.5 * al * al);
    std::fputc('\n', fp);
  }
  if (fp != stdout) std::fclose(fp);
  return 0;
}

int cmd_equilibrium(double Z, const FieldChoice& fc, double accuracy,
                    const std::string& out) {
  const ModelParams p = fc.resolve(Z);
  const EquilibriumReport rep = find_equilibrium(p, accuracy);

  auto line = [](const char* name, double v) {
    std::printf("%-14s ", name);
    std::printf(kNum, v);
    std::putchar('\n');
  };
  line("Z", p.Z);
  line("epsilon", p.epsilon);
  line("L", p.L);
  line("B_au", p.B);
  line("a_eq", rep.a_eq);
  line("E_eq", rep.E_eq);
  line("bracket_lo", rep.a_bracket_lo);
  line("bracket_hi", rep.a_bracket_hi);
  line("e_prime", rep.e_prime_at_eq);
  line("R_angstrom", rep.physical.R_angstrom);
  line("E_hartree", rep.physical.E_hartree);
  line("E_eV", rep.physical.E_eV);
  line("B_tesla", rep.physical.B_tesla);

  if (!out.empty()) {
    // Append one row per run; write the header only when the file starts out
    // missing or empty.
    bool need_header = true;
    if (std::FILE* probe = std::fopen(out.c_str(), "r")) {
      std::fseek(probe, 0, SEEK_END);
      need_header = std::ftell(probe) == 0;
      std::fclose(probe);
    }
    std::FILE* fp = open_or_stdout(out, "a");
    if (need_header)
      std::fprintf(fp,
                   "Z,epsilon,L,B,a_eq,E_eq,R_angstrom,E_eV,B_tesla\n");
    const double row[] = {p.Z,      p.epsilon,   p.L,
                          p.B,      rep.a_eq,    rep.E_eq,
                          rep.physical.R_angstrom, rep.physical.E_eV,
                          rep.physical.B_tesla};
    for (std::size_t i = 0; i < std::size(row); ++i) {
      if (i > 0) std::fputc(',', fp);
      std::fprintf(fp, kNum, row[i]);
    }
    std::fputc('\n', fp);
    std::fclose(fp);
  }
  return 0;
}

int cmd_asymptotics(double Z, double eps_min, double eps_max, long n,
                    bool ub_only, double accuracy, const std::string& out) {
  if (!(eps_min > 0.0) || !(eps_max > eps_min) || n < 2)
    throw std::invalid_argument(
        "asymptotics: need 0 < eps-min < eps-max and n >= 2 samples");

  std::vector<double> eps(n), a_ub(n), a_full;
  for (long i = 0; i < n; ++i)
    eps[i] = eps_min * std::pow(eps_max / eps_min,
                                static_cast<double>(i) /
                                    static_cast<double>(n - 1));

  std::FILE* fp = open_or_stdout(out, "w");
  std::fprintf(fp, "epsilon,a_eq_ub,a_eq,ratio_ub,ratio\n");
  for (long i = 0; i < n; ++i) {
    const ModelParams p = params_from_epsilon(Z, eps[i]);
    a_ub[i] = equilibrium_ub(p).location;
    double af = std::numeric_limits<double>::quiet_NaN();
    if (!ub_only) {
      af = find_equilibrium(p, accuracy).a_eq;
      a_full.push_back(af);
    }
    const double rt = std::sqrt(eps[i]);
    std::fprintf(fp, kNum, eps[i]);
    std::fputc(',', fp);
    std::fprintf(fp, kNum, a_ub[i]);
    std::fputc(',', fp);
    if (!ub_only) std::fprintf(fp, kNum, af);
    std::fputc(',', fp);
    std::fprintf(fp, kNum, a_ub[i] / rt);
    std::fputc(',', fp);
    if (!ub_only) std::fprintf(fp, kNum, af / rt);
    std::fputc('\n', fp);
  }

  const auto [c_ub, d_ub] = fit_sqrt_linear(eps, a_ub);
  const double c_closed = 0.5 * std::sqrt(Z / (8.0 * Z - 1.0));
  auto comment = [&](const char* name, double v) {
    std::fprintf(fp, "# %-22s ", name);
    std::fprintf(fp, kNum, v);
    std::fputc('\n', fp);
  };
  comment("c_ub_fit", c_ub);
  comment("c_closed_form", c_closed);
  if (!ub_only) {
    const auto [c_f, d_f] = fit_sqrt_linear(eps, a_full);
    comment("c_fit", c_f);
    // least-squares slope of log a_eq against log epsilon
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (long i = 0; i < n; ++i) {
      const double x = std::log(eps[i]);
      const double y = std::log(a_full[i]);
      sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    const double nn = static_cast<double>(n);
    comment("loglog_slope", (nn * sxy - sx * sy) / (nn * sxx - sx * sx));
  }
  if (fp != stdout) std::fclose(fp);
  return 0;
}

int cmd_groundstate(const std::string& z_text, double a, double h, double box,
                    const std::string& out) {
  double Z;
  if (z_text == "inf" || z_text == "infinity") {
    Z = std::numeric_limits<double>::infinity();
  } else {
    std::size_t used = 0;
    Z = std::stod(z_text, &used);
    if (used != z_text.size())
      throw std::invalid_argument("groundstate: cannot parse --Z value '" +
                                  z_text + "'");
  }
  const GridSpec g = make_grid(box, h, a);
  const GroundStateResult r = ground_state(a, Z, g);
  auto line = [](const char* name, double v) {
    std::printf("%-14s ", name);
    std::printf(kNum, v);
    std::putchar('\n');
  };
  line("box", r.grid.box);
  line("h", r.grid.h);
  line("a_snapped", r.grid.a_snapped);
  line("Z", Z);
  line("energy", r.energy);
  line("residual", r.residual);
  std::printf("%-14s %d\n", "iterations", r.iterations);
  if (!out.empty()) write_eigenvector_csv(r, Z, out);
  return 0;
}

int cmd_units(double Z, const FieldChoice& fc, double a, double E) {
  const ModelParams p = fc.resolve(Z);
  auto line = [](const char* name, double v) {
    std::printf("%-14s ", name);
    std::printf(kNum, v);
    std::putchar('\n');
  };
  line("Z", p.Z);
  line("epsilon", p.epsilon);
  line("L", p.L);
  line("B_au", p.B);
  const PhysicalValues pv = convert_units(std::isnan(a) ? 0.0 : a,
                                          std::isnan(E) ? 0.0 : E, p);
  line("B_tesla", pv.B_tesla);
  if (!std::isnan(a)) line("R_angstrom", pv.R_angstrom);
  if (!std::isnan(E)) {
    line("E_hartree", pv.E_hartree);
    line("E_eV", pv.E_eV);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"one-dimensional contact-well dimer in a strong field"};
  app.require_subcommand(1);

  const double nan = std::numeric_limits<double>::quiet_NaN();

  // curve
  auto* curve = app.add_subcommand(
      "curve", "CSV of energies and diagnostics against separation");
  double cv_Z = 1.0, cv_amin = 0.0, cv_amax = 1.0, cv_acc = 2e-3;
  long cv_n = 101;
  bool cv_exact = false;
  std::string cv_out;
  FieldChoice cv_fc;
  curve->add_option("--Z", cv_Z, "well strength");
  add_field_options(curve, cv_fc);
  curve->add_option("--a-min", cv_amin, "first separation");
  curve->add_option("--a-max", cv_amax, "last separation");
  curve->add_option("--n", cv_n, "number of samples");
  curve->add_flag("--with-exact", cv_exact,
                  "fill the grid-solver columns where the separation admits "
                  "an aligned refinement pair");
  curve->add_option("--accuracy", cv_acc, "error budget for exact energies");
  curve->add_option("--out", cv_out, "output file (default: stdout)");

  // equilibrium
  auto* equi = app.add_subcommand(
      "equilibrium", "minimize the total energy over separation");
  double eq_Z = 1.0, eq_acc = 2e-3;
  std::string eq_out;
  FieldChoice eq_fc;
  equi->add_option("--Z", eq_Z, "well strength");
  add_field_options(equi, eq_fc);
  equi->add_option("--accuracy", eq_acc, "error budget for the energy curve");
  equi->add_option("--out", eq_out, "CSV file to append the result row to");

  // asymptotics
  auto* asym = app.add_subcommand(
      "asymptotics", "weak-repulsion scaling of the equilibrium separation");
  double as_Z = 1.0, as_lo = 1e-4, as_hi = 1e-2, as_acc = 2e-3;
  long as_n = 9;
  bool as_ub = false;
  std::string as_out;
  asym->add_option("--Z", as_Z, "well strength");
  asym->add_option("--eps-min", as_lo, "smallest repulsion strength");
  asym->add_option("--eps-max", as_hi, "largest repulsion strength");
  asym->add_option("--n", as_n, "number of log-spaced samples");
  asym->add_flag("--ub-only", as_ub,
                 "closed-form variational equilibria only (no grid solves)");
  asym->add_option("--accuracy", as_acc, "error budget for the energy curve");
  asym->add_option("--out", as_out, "output file (default: stdout)");

  // groundstate
  auto* gs = app.add_subcommand(
      "groundstate", "one two-electron eigensolve on an explicit grid");
  // keep only the long help flag so the spacing option can be spelled --h
  gs->set_help_flag("--help", "print this help message and exit");
  std::string gs_Z = "1";
  double gs_a = 0.0, gs_h = 0.05, gs_box = 12.0;
  std::string gs_out;
  gs->add_option("--Z", gs_Z, "well strength (number or 'inf')");
  gs->add_option("-a,--a", gs_a, "well half-separation")->required();
  gs->add_option("--h", gs_h, "grid spacing");
  gs->add_option("--box", gs_box, "half-width of the domain");
  gs->add_option("--out", gs_out, "CSV file for the eigenfunction");

  // units
  auto* un = app.add_subcommand(
      "units", "laboratory values for a parameter set");
  double un_Z = 1.0, un_a = nan, un_E = nan;
  FieldChoice un_fc;
  un->add_option("--Z", un_Z, "well strength");
  add_field_options(un, un_fc);
  un->add_option("-a,--a", un_a, "scaled separation to convert");
  un->add_option("-E,--E", un_E, "scaled energy to convert");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (curve->parsed())
      return cmd_curve(cv_Z, cv_fc, cv_amin, cv_amax, cv_n, cv_exact, cv_acc,
                       cv_out);
    if (equi->parsed()) return cmd_equilibrium(eq_Z, eq_fc, eq_acc, eq_out);
    if (asym->parsed())
      return cmd_asymptotics(as_Z, as_lo, as_hi, as_n, as_ub, as_acc, as_out);
    if (gs->parsed()) return cmd_groundstate(gs_Z, gs_a, gs_h, gs_box, gs_out);
    if (un->parsed()) return cmd_units(un_Z, un_fc, un_a, un_E);
  } catch (const NoBinding& e) {
    std::fprintf(stderr, "no binding: %s\n", e.what());
    return 4;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return 3;
  }
  return 0;
}
