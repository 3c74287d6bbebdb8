#pragma once

// Closed-form one-electron quantities for a particle on a line bound by two
// attractive contact wells of unit strength at z = -a and z = +a, in the
// scaled units used throughout this library. The even bound state exists for
// every separation; its decay exponent alpha0 solves
//
//   alpha = 1 + exp(-2 a alpha),
//
// so alpha0 runs from 2 (coalesced wells) down to 1 (far-separated wells).

#include <cmath>
#include <stdexcept>

#include "lambert_w.hpp"

namespace deltadimer {

// Decay exponent alpha0(a) of the even bound state, via the principal
// Lambert branch. Small separations switch to the Taylor expansion; the W
// argument 2a exp(-2a) loses relative precision as a -> 0 while the series
// error is O(a^3), far below double noise at the switch point.
inline double alpha0(double a) {
  if (!(a >= 0.0)) throw std::domain_error("alpha0: a must be >= 0");
  if (a < 1e-6) return 2.0 - 4.0 * a + 16.0 * a * a;
  return 1.0 + lambert_w0(2.0 * a * std::exp(-2.0 * a)) / (2.0 * a);
}

// d(alpha0)/da, from differentiating the fixed-point relation. This
// arrangement uses exp(-2 a alpha0) = alpha0 - 1 and stays finite at a = 0,
// where the derivative equals -4 exactly.
inline double alpha0_prime(double a) {
  if (!(a >= 0.0)) throw std::domain_error("alpha0_prime: a must be >= 0");
  const double al = alpha0(a);
  const double t = al - 1.0;
  return -2.0 * al * t / (1.0 + 2.0 * a * t);
}

// Normalized even bound state:
//
//   phi0(z) = A1 exp(-alpha0 |z|)   for |z| >  a
//           = A2 cosh(alpha0 z)     for |z| <= a
//
// Unit L2 norm plus continuity at |z| = a fix both amplitudes:
//
//   A2 = sqrt(2 alpha0 / (1 + exp(2 a alpha0) + 2 a alpha0)),
//   A1 = A2 cosh(a alpha0) exp(a alpha0).
//
// Stored in the exp(-2 a alpha0)-scaled arrangement so nothing overflows at
// large separations.
struct OneElectronState {
  double a;
  double alpha0;
  double A1;
  double A2;
};

inline OneElectronState one_electron_state(double a) {
  const double al = alpha0(a);
  const double u = a * al;
  const double q = std::exp(-2.0 * u);
  const double Q = std::sqrt(2.0 * al / (1.0 + (1.0 + 2.0 * u) * q));
  return {a, al, Q * std::cosh(u), Q * std::exp(-u)};
}

inline double phi0(const OneElectronState& s, double z) {
  const double az = std::abs(z);
  if (az <= s.a) return s.A2 * std::cosh(s.alpha0 * z);
  return s.A1 * std::exp(-s.alpha0 * az);
}

// integral of phi0^4 over the line. With u = a alpha0 and q = exp(-2u):
//
//   f(a) = alpha0 [8 cosh^4 u + sinh 4u + 8 sinh 2u + 12 u]
//          / (4 (exp(2u) + 2u + 1)^2),
//
// written below with every factor scaled by exp(-4u) so the large-a limit
// alpha0/4 is reached without overflow. f(0) = 1 and f(a) <= alpha0(a)/2.
inline double f_exchange(double a) {
  if (!(a >= 0.0)) throw std::domain_error("f_exchange: a must be >= 0");
  const double al = alpha0(a);
  const double u = a * al;
  const double q = std::exp(-2.0 * u);
  const double c = 0.5 * (1.0 + q);  // cosh(u) exp(-u)
  const double num = 8.0 * c * c * c * c + 0.5 * (1.0 - q * q * q * q) +
                     4.0 * (q - q * q * q) + 12.0 * u * q * q;
  const double den = 1.0 + (1.0 + 2.0 * u) * q;
  return al * num / (4.0 * den * den);
}

// The same integral from an independently grouped antiderivative,
//
//   f(a) = alpha0 [exp(4u) + 4 exp(2u) + 4 sinh 2u + 12 u + 3] / (4 (...)^2),
//
// kept as a cross-check target for the test suite: a mismatch with
// f_exchange beyond round-off means one of the two reductions is wrong.
inline double f_exchange_alt(double a) {
  if (!(a >= 0.0)) throw std::domain_error("f_exchange_alt: a must be >= 0");
  const double al = alpha0(a);
  const double u = a * al;
  const double q = std::exp(-2.0 * u);
  const double num =
      1.0 + 4.0 * q + 2.0 * (q - q * q * q) + (12.0 * u + 3.0) * q * q;
  const double den = 1.0 + (1.0 + 2.0 * u) * q;
  return al * num / (4.0 * den * den);
}

// d f / d a by the chain rule through alpha0 and u = a alpha0, in the same
// exp(-4u)-scaled arrangement. f'(0) = -2 exactly.
inline double f_exchange_prime(double a) {
  if (!(a >= 0.0)) throw std::domain_error("f_exchange_prime: a must be >= 0");
  const double al = alpha0(a);
  const double alp = alpha0_prime(a);
  const double u = a * al;
  const double up = al + a * alp;
  const double q = std::exp(-2.0 * u);
  const double c = 0.5 * (1.0 + q);  // cosh(u) exp(-u)
  const double s = 0.5 * (1.0 - q);  // sinh(u) exp(-u)
  const double q2 = q * q;
  const double q3 = q2 * q;
  const double q4 = q2 * q2;
  const double num = 8.0 * c * c * c * c + 0.5 * (1.0 - q4) + 4.0 * (q - q3) +
                     12.0 * u * q2;
  const double dnum_du = 32.0 * c * c * c * s + 2.0 * (1.0 + q4) +
                         8.0 * (q + q3) + 12.0 * q2;
  const double den = 1.0 + (1.0 + 2.0 * u) * q;
  const double dden_du = 2.0 * (1.0 + q);
  return alp * num / (4.0 * den * den) +
         al * up * (dnum_du * den - 2.0 * num * dden_du) /
             (4.0 * den * den * den);
}

// One-parameter variational upper bound on the scaled two-electron
// electronic energy at well half-separation a for well strength Z:
// e_ub = -alpha0^2 + f/Z. Z may be +infinity (repulsion switched off),
// which collapses the bound onto the exact non-interacting value.
inline double e_ub(double a, double Z) {
  if (!(Z > 0.0)) throw std::domain_error("e_ub: Z must be positive");
  const double al = alpha0(a);
  return -al * al + f_exchange(a) / Z;
}

}  // namespace deltadimer
