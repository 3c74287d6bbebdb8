#pragma once

// Variational bounds on the total molecular energy and the equilibrium
// analysis that can be done in closed form (no grid solver involved).
//
// Scaled units: energies are measured in the natural units of the contact
// model, the dissociation threshold of one-electron loss sits at
// -alpha0(a)^2 / 2 and the two-atom threshold at -1 per electron pair.

#include <cmath>
#include <limits>

#include "errors.hpp"
#include "one_electron.hpp"
#include "search.hpp"

namespace deltadimer {

// Scaled model parameters. Z is the well strength, epsilon the coupling of
// the internuclear repulsion term epsilon/(2a). For the strong-field
// hydrogen dimer epsilon = Z/L with L = 2 W0(sqrt(B)/2), B the field
// strength in atomic units; L and B are carried along when known so reports
// can be converted back to physical units.
struct ModelParams {
  double Z = 1.0;
  double epsilon = 0.0;
  double L = std::numeric_limits<double>::quiet_NaN();
  double B = std::numeric_limits<double>::quiet_NaN();
};

enum class ExtremumKind { minimum, maximum };

struct ExtremumResult {
  double location;
  double value;
  ExtremumKind kind;
  double bracket_lo;
  double bracket_hi;
};

// j(a, Z) = 2a (alpha0^2 - 1 - f/Z): the margin by which the electronic
// binding gain outruns a repulsion cost epsilon = 1 at separation a, scaled
// so that "j(a) > epsilon * 1" would read "binding wins". Used here mostly
// through its sign structure and its maximum over a.
inline double j_func(double a, double Z) {
  if (!(Z > 0.0)) throw std::domain_error("j_func: Z must be positive");
  const double al = alpha0(a);
  return 2.0 * a * (al * al - 1.0 - f_exchange(a) / Z);
}

// g(a, Z) = 2a^2 d/da[-e_ub] = 2a^2 (-2 alpha0 alpha0' + f'/Z). The
// stationarity condition of the upper-bound total energy reads
// g(a) = epsilon, so equilibria of the bound are level crossings of g.
inline double g_func(double a, double Z) {
  if (!(Z > 0.0)) throw std::domain_error("g_func: Z must be positive");
  const double al = alpha0(a);
  const double alp = alpha0_prime(a);
  return 2.0 * a * a * (-2.0 * al * alp + f_exchange_prime(a) / Z);
}

// Total upper bound e_ub + epsilon/(2a). Coalesced wells cost infinite
// repulsion; that is reported as a value, not an error.
inline double E_ub(double a, const ModelParams& p) {
  if (!(a >= 0.0)) throw std::domain_error("E_ub: a must be >= 0");
  if (a == 0.0) return std::numeric_limits<double>::infinity();
  return e_ub(a, p.Z) + p.epsilon / (2.0 * a);
}

// Non-interacting total curve -alpha0^2 + epsilon/(2a). Dropping the
// (positive) electron repulsion makes this a lower bound on the true total
// energy at every separation.
inline double E_ni(double a, double epsilon) {
  if (!(a >= 0.0)) throw std::domain_error("E_ni: a must be >= 0");
  if (a == 0.0) return std::numeric_limits<double>::infinity();
  const double al = alpha0(a);
  return -al * al + epsilon / (2.0 * a);
}

namespace detail {

// Scan-then-refine minimizer used for every closed-form extremum in this
// header: coarse pass with a fixed step over [lo, hi], golden-section polish
// inside the winning bracket. The step is fine enough to separate the basins
// of every curve this is applied to.
template <class F>
ExtremumResult minimize_scanned(F&& f, double lo, double hi,
                                double step = 1e-3, double xtol = 1e-10) {
  const ScanMin coarse = scan_minimum(f, lo, hi, step);
  const double x = golden_min(f, coarse.lo, coarse.hi, xtol);
  return {x, f(x), ExtremumKind::minimum, coarse.lo, coarse.hi};
}

}  // namespace detail

// Maximum of g(., Z) on (0, 10]; every admissible epsilon for the
// upper-bound equilibrium lies below this value.
inline ExtremumResult g_max(double Z) {
  auto neg = [Z](double a) { return -g_func(a, Z); };
  ExtremumResult r = detail::minimize_scanned(neg, 0.0, 10.0);
  return {r.location, -r.value, ExtremumKind::maximum, r.bracket_lo,
          r.bracket_hi};
}

// Both stationary points of the upper-bound total energy for the given
// coupling: the smaller root of g = epsilon is the bound's local minimum,
// the larger one its local maximum. Throws NoEquilibrium when epsilon
// exceeds the peak of g.
inline std::pair<ExtremumResult, ExtremumResult> ub_stationary_points(
    const ModelParams& p) {
  if (!(p.epsilon > 0.0))
    throw std::domain_error("ub_stationary_points: epsilon must be positive");
  const ExtremumResult peak = g_max(p.Z);
  if (!(p.epsilon < peak.value))
    throw NoEquilibrium("upper-bound curve has no stationary point: epsilon above max g");

  auto level = [&](double a) { return g_func(a, p.Z) - p.epsilon; };
  // g rises from 0 through epsilon before its peak and falls back through
  // epsilon after it; bracket each crossing by a fixed-step walk. The walks
  // are capped at the peak (left) and at a generous ceiling (right) so a
  // coupling squeezed against the peak cannot strand them.
  const double step = 1e-3;
  double lo = 0.0;
  while (lo + step < peak.location && level(lo + step) < 0.0) lo += step;
  const double up = std::min(lo + step, peak.location);
  const double a_min = bisect_root(level, lo, up, 1e-12);

  double hi = peak.location;
  while (level(hi + step) > 0.0) {
    hi += step;
    if (hi > 100.0)
      throw NonConvergence("ub_stationary_points: no right-hand crossing of g below a = 100");
  }
  const double a_max = bisect_root(level, hi, hi + step, 1e-12);

  const ExtremumResult mn{a_min, E_ub(a_min, p), ExtremumKind::minimum, lo, up};
  const ExtremumResult mx{a_max, E_ub(a_max, p), ExtremumKind::maximum, hi,
                          hi + step};
  return {mn, mx};
}

// Equilibrium separation of the upper-bound total energy (its local
// minimum, the smaller stationary point).
inline ExtremumResult equilibrium_ub(const ModelParams& p) {
  return ub_stationary_points(p).first;
}

// Global minimum of the upper-bound total energy over (0, 10].
inline ExtremumResult E_ub_min(const ModelParams& p) {
  auto f = [&](double a) { return E_ub(a, p); };
  return detail::minimize_scanned(f, 0.0, 10.0);
}

// Largest separation at which the non-interacting lower curve is still as
// deep as the upper bound's minimum. Any true equilibrium separation lies at
// or below this value, since beyond it even the lower bound exceeds an
// energy the system provably reaches.
inline double a_plus(const ModelParams& p) {
  const ExtremumResult ub_min = E_ub_min(p);
  if (!(ub_min.value < -1.0))
    throw PreconditionFailed("a_plus: upper-bound minimum does not reach -1");

  auto f = [&](double a) { return E_ni(a, p.epsilon); };
  const ExtremumResult ni_min = detail::minimize_scanned(f, 0.0, 10.0);

  auto level = [&](double a) { return E_ni(a, p.epsilon) - ub_min.value; };
  double hi = std::max(ni_min.location * 2.0, ni_min.location + 0.1);
  while (level(hi) <= 0.0) hi *= 2.0;  // E_ni -> -1 > ub_min, so this exits
  return bisect_root(level, ni_min.location, hi, 1e-9);
}

// Inverse of the decay exponent: the separation with alpha0(a) = target,
// for target in (1, 2]. alpha0 is strictly decreasing, so plain bisection
// on an expanding interval suffices.
inline double alpha0_inverse(double target) {
  if (!(target > 1.0) || !(target <= 2.0))
    throw std::domain_error("alpha0_inverse: target must lie in (1, 2]");
  if (target == 2.0) return 0.0;
  double hi = 1.0;
  while (alpha0(hi) > target) hi *= 2.0;
  auto f = [target](double a) { return alpha0(a) - target; };
  return bisect_root(f, 0.0, hi, 1e-10);
}

}  // namespace deltadimer
