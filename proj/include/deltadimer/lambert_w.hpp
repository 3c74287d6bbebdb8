#pragma once

// Principal branch of the Lambert W function (real arguments, x >= -1/e).

#include <cmath>
#include <stdexcept>

namespace deltadimer {

// W0(x): the solution w >= -1 of w * exp(w) = x.
//
// Halley iteration on top of a piecewise initial guess: a branch-point
// series near x = -1/e, w ~ x/(1+x) on the middle range, log(x) - log(log(x))
// for large x. The iteration is quartic-ish in practice and reaches machine
// precision in a handful of steps anywhere on the domain.
inline double lambert_w0(double x) {
  constexpr double inv_e = 0.36787944117144233;
  if (std::isnan(x)) return x;
  if (x < -inv_e) {
    // Tolerate a hair of representation error below the branch point.
    if (x < -inv_e - 1e-12) throw std::domain_error("lambert_w0: x < -1/e");
    x = -inv_e;
  }
  if (x == 0.0) return 0.0;

  double w;
  if (x < -inv_e + 1e-2) {
    // Series in p = sqrt(2 (e x + 1)) about the branch point w = -1.
    const double p = std::sqrt(2.0 * (std::exp(1.0) * x + 1.0));
    w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
    // Halley's correction degenerates exactly at the branch point; the
    // series alone is already far more accurate than double there.
    if (p < 1e-5) return w;
  } else if (x < std::exp(1.0)) {
    w = x / (1.0 + x);
  } else {
    const double l = std::log(x);
    w = l - std::log(l);
  }

  for (int it = 0; it < 32; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    const double dw = f / (ew * wp1 - 0.5 * (w + 2.0) * f / wp1);
    w -= dw;
    if (std::abs(dw) <= 1e-16 * (1.0 + std::abs(w))) break;
  }
  return w < -1.0 ? -1.0 : w;
}

}  // namespace deltadimer
