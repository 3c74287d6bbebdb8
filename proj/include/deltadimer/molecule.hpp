#pragma once

// Molecular layer: total energy curves, equilibrium separation, and the
// conversion from the scaled model quantities back to laboratory units.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "errors.hpp"
#include "grid2e.hpp"
#include "lambert_w.hpp"
#include "one_electron.hpp"
#include "search.hpp"

namespace deltadimer {

// Laboratory conversion constants.
struct UnitSystem {
  double B0_tesla = 2.35e5;      // one atomic unit of field strength, in tesla
  double hartree_eV = 27.2;      // one hartree, in electron volts
  double bohr_angstrom = 0.53;   // one Bohr radius, in angstrom
};

// Effective squeezing length of the lowest Landau channel as a function of
// the field strength (atomic units), L = 2 W0(sqrt(B)/2), and its inverse
// B = L^2 exp(L). Both are strictly increasing for positive arguments.
inline double field_to_L(double B) {
  if (!(B > 0.0))
    throw std::domain_error("field_to_L: field strength must be positive");
  return 2.0 * lambert_w0(0.5 * std::sqrt(B));
}

inline double L_to_field(double L) {
  if (!(L > 0.0)) throw std::domain_error("L_to_field: L must be positive");
  return L * L * std::exp(L);
}

// The three equivalent ways to pin the field strength. Each constructor
// fills the whole parameter record; epsilon * L = Z holds in all of them.
// For very large L the field value overflows to +infinity and is kept so.
inline ModelParams params_from_epsilon(double Z, double epsilon) {
  if (!(Z > 0.0)) throw std::domain_error("params_from_epsilon: Z must be positive");
  if (!(epsilon > 0.0))
    throw std::domain_error("params_from_epsilon: epsilon must be positive");
  const double L = Z / epsilon;
  return {Z, epsilon, L, L_to_field(L)};
}

inline ModelParams params_from_L(double Z, double L) {
  if (!(Z > 0.0)) throw std::domain_error("params_from_L: Z must be positive");
  if (!(L > 0.0)) throw std::domain_error("params_from_L: L must be positive");
  return {Z, Z / L, L, L_to_field(L)};
}

inline ModelParams params_from_B(double Z, double B) {
  if (!(Z > 0.0)) throw std::domain_error("params_from_B: Z must be positive");
  const double L = field_to_L(B);
  return {Z, Z / L, L, B};
}

struct PhysicalValues {
  double R_angstrom;  // internuclear distance
  double E_hartree;   // total energy; the scaled value reads directly in hartree
  double E_eV;
  double B_tesla;
};

// Scaled (a, E) at the given parameters to laboratory values. The scaled
// separation stretches back by 2/(L Z) in units of the Bohr radius; the
// scaled energy is already the energy in hartree.
inline PhysicalValues convert_units(double a, double E, const ModelParams& p,
                                    const UnitSystem& u = {}) {
  if (!(p.L > 0.0))
    throw PreconditionFailed("convert_units: parameter record lacks L");
  const double B_au = std::isnan(p.B) ? L_to_field(p.L) : p.B;
  return {u.bohr_angstrom * 2.0 * a / (p.L * p.Z), E, E * u.hartree_eV,
          B_au * u.B0_tesla};
}

// Total molecular energy: grid-solver electronic part plus the scaled
// nuclear repulsion epsilon / (2a).
inline double E_total(double a, const ModelParams& p, double accuracy = 2e-3) {
  if (!(a > 0.0)) throw std::domain_error("E_total: a must be positive");
  return e_electronic(a, p.Z, accuracy) + p.epsilon / (2.0 * a);
}

// Electronic energy curve e(a) sampled at separations where honest (h, h/2)
// refinement pairs exist (multiples of 0.05, thinning to multiples of 0.1
// beyond a = 0.5), interpolated by a cubic whose left-end slope is clamped
// to the extrapolated e'(0+). The clamp controls the small-a region, where
// the equilibria of weakly repelling configurations live, without any grid
// solve below the first positive sample.
class ElectronicCurve {
 public:
  explicit ElectronicCurve(double Z, double accuracy = 2e-3,
                           double extent = 0.35)
      : Z_(Z) {
    std::vector<double> xs, ys;
    for (int k = 0; static_cast<double>(k) * 0.05 <= std::min(extent, 0.5) + 1e-12; ++k)
      xs.push_back(static_cast<double>(k) * 0.05);
    while (xs.back() + 1e-12 < extent) xs.push_back(xs.back() + 0.1);
    if (xs.size() < 3)
      throw std::invalid_argument("ElectronicCurve: extent too small");
    ys.reserve(xs.size());
    for (const double a : xs) ys.push_back(e_electronic(a, Z, accuracy));
    ep0_ = e_prime_zero_limit(Z);
    spline_ = CubicSpline(xs, ys, ep0_);
    samples_ = std::move(xs);
    values_ = std::move(ys);
  }

  double operator()(double a) const { return spline_(a); }
  double derivative(double a) const { return spline_.derivative(a); }
  double a_max() const { return spline_.x_back(); }
  double e_prime_zero() const { return ep0_; }
  double strength() const { return Z_; }
  const std::vector<double>& sample_separations() const { return samples_; }
  const std::vector<double>& sample_energies() const { return values_; }

 private:
  double Z_;
  double ep0_ = 0.0;
  CubicSpline spline_;
  std::vector<double> samples_;
  std::vector<double> values_;
};

struct EquilibriumReport {
  double a_eq;             // scaled equilibrium half-separation
  double E_eq;             // scaled total energy at the minimum
  double a_bracket_lo;     // scan bracket that contained the minimum
  double a_bracket_hi;
  double e_prime_at_eq;    // slope of the electronic interpolant at a_eq
  PhysicalValues physical;
};

// Minimum of the total energy over separations. The search range (0, A+] is
// rigorous: beyond the separation where the repulsion-shifted one-electron
// floor rises back above the variational minimum, the total energy cannot
// undercut anything found inside. Throws NoBinding when even the
// variational bound cannot reach the dissociation threshold (cheap, no grid
// solve), and when the found minimum fails to clear it.
inline EquilibriumReport find_equilibrium(const ModelParams& params,
                                          double accuracy = 2e-3) {
  ModelParams p = params;
  if (!(p.epsilon > 0.0))
    throw std::domain_error("find_equilibrium: epsilon must be positive");
  if (std::isnan(p.L)) p.L = p.Z / p.epsilon;

  const ExtremumResult ub = E_ub_min(p);
  if (!(ub.value < -1.0))
    throw NoBinding("variational minimum " + std::to_string(ub.value) +
                    " does not reach the dissociation threshold -1");
  const double A = a_plus(p);

  const double extent =
      std::max(0.35, std::ceil(A / 0.05 - 1e-12) * 0.05);
  ElectronicCurve curve(p.Z, accuracy, extent);
  const double hi = std::min(A, curve.a_max());

  const auto total = [&](double a) {
    return curve(a) + p.epsilon / (2.0 * a);
  };
  const ScanMin coarse = scan_minimum(total, hi / 2000.0, hi, hi / 2000.0);
  const double a_eq = parabolic_min(total, coarse.lo, coarse.hi, 1e-11);
  const double E_eq = total(a_eq);
  if (E_eq >= -1.0 - 1e-3)
    throw NoBinding("total-energy minimum " + std::to_string(E_eq) +
                    " does not clear the dissociation threshold -1");

  EquilibriumReport rep;
  rep.a_eq = a_eq;
  rep.E_eq = E_eq;
  rep.a_bracket_lo = coarse.lo;
  rep.a_bracket_hi = coarse.hi;
  rep.e_prime_at_eq = curve.derivative(a_eq);
  rep.physical = convert_units(a_eq, E_eq, p);
  return rep;
}

}  // namespace deltadimer
