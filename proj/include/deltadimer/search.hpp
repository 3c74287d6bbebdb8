#pragma once

// Small one-dimensional search and fitting helpers shared by the bounds and
// molecule layers. All routines are deterministic.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace deltadimer {

// Root of f on [lo, hi] by bisection. f(lo) and f(hi) must differ in sign;
// the bracket is shrunk below xtol.
template <class F>
double bisect_root(F&& f, double lo, double hi, double xtol = 1e-12,
                   int max_iter = 240) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::invalid_argument("bisect_root: endpoints do not bracket a root");
  for (int i = 0; i < max_iter && hi - lo > xtol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Golden-section minimizer on [lo, hi]; assumes a single interior minimum.
// Never evaluates the endpoints, so infinite boundary values are fine.
template <class F>
double golden_min(F&& f, double lo, double hi, double xtol = 1e-10) {
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > xtol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// Bracketed minimizer combining successive parabolic interpolation with
// golden-section safeguard steps (Brent's scheme). Same contract as
// golden_min: one interior minimum on [lo, hi], endpoints never evaluated.
template <class F>
double parabolic_min(F&& f, double lo, double hi, double xtol = 1e-10) {
  constexpr double gold = 0.3819660112501051;  // 2 - golden ratio
  double a = lo, b = hi;
  double x = a + gold * (b - a), w = x, v = x;
  double fx = f(x), fw = fx, fv = fx;
  double d = 0.0, e = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    const double tol1 = 0.5 * xtol + 1e-15 * std::abs(x);
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - m) <= tol2 - 0.5 * (b - a)) break;
    bool take_golden = true;
    if (std::abs(e) > tol1) {
      // Fit a parabola through (x, w, v); accept its vertex only when it
      // falls inside the bracket and halves the previous-previous step.
      const double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double e_prev = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) &&
          p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = (m > x ? tol1 : -tol1);
        take_golden = false;
      }
    }
    if (take_golden) {
      e = (x < m ? b : a) - x;
      d = gold * e;
    }
    const double u = x + (std::abs(d) >= tol1 ? d : (d > 0 ? tol1 : -tol1));
    const double fu = f(u);
    if (fu <= fx) {
      (u < x ? b : a) = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      (u < x ? a : b) = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  return x;
}

struct ScanMin {
  double x;      // best sample
  double value;  // f at the best sample
  double lo;     // bracket around the best sample, clipped to the scan range
  double hi;
};

// Uniform scan of f over [lo, hi] with the given step; returns the best
// sample together with its one-step neighborhood as a refinement bracket.
template <class F>
ScanMin scan_minimum(F&& f, double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi > lo))
    throw std::invalid_argument("scan_minimum: bad range or step");
  const auto n = static_cast<std::size_t>((hi - lo) / step + 0.5);
  ScanMin best{lo, f(lo), lo, lo};
  for (std::size_t k = 1; k <= n; ++k) {
    const double x = (k == n) ? hi : lo + static_cast<double>(k) * step;
    const double v = f(x);
    if (v < best.value) {
      best.x = x;
      best.value = v;
    }
  }
  best.lo = std::max(lo, best.x - step);
  best.hi = std::min(hi, best.x + step);
  return best;
}

// Least-squares coefficients (c, d) of the model y ~ c sqrt(x) + d x.
// The two-term basis matters: the curves this is used on carry a linear
// correction that a one-term fit would alias into the leading coefficient.
inline std::pair<double, double> fit_sqrt_linear(const std::vector<double>& x,
                                                 const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_sqrt_linear: need matching n >= 2");
  double s11 = 0, s12 = 0, s22 = 0, b1 = 0, b2 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double u = std::sqrt(x[i]);
    const double v = x[i];
    s11 += u * u;
    s12 += u * v;
    s22 += v * v;
    b1 += u * y[i];
    b2 += v * y[i];
  }
  const double det = s11 * s22 - s12 * s12;
  if (det == 0.0) throw std::invalid_argument("fit_sqrt_linear: singular fit");
  return {(b1 * s22 - b2 * s12) / det, (s11 * b2 - s12 * b1) / det};
}

// Cubic interpolant through (x_i, y_i) with a prescribed first derivative at
// the left end and a not-a-knot condition at the right end. Solved in the
// second-derivative (moment) formulation with a dense elimination; the knot
// counts here are tiny.
class CubicSpline {
 public:
  CubicSpline() = default;

  CubicSpline(std::vector<double> x, std::vector<double> y, double left_slope)
      : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 3 || y_.size() != n)
      throw std::invalid_argument("CubicSpline: need n >= 3 matching points");
    for (std::size_t i = 0; i + 1 < n; ++i)
      if (!(x_[i + 1] > x_[i]))
        throw std::invalid_argument("CubicSpline: abscissae must increase");

    std::vector<std::vector<double>> A(n, std::vector<double>(n, 0.0));
    std::vector<double> r(n, 0.0);
    auto h = [&](std::size_t i) { return x_[i + 1] - x_[i]; };

    // Clamped left end: S'(x_0) = left_slope.
    A[0][0] = h(0) / 3.0;
    A[0][1] = h(0) / 6.0;
    r[0] = (y_[1] - y_[0]) / h(0) - left_slope;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      A[i][i - 1] = h(i - 1) / 6.0;
      A[i][i] = (h(i - 1) + h(i)) / 3.0;
      A[i][i + 1] = h(i) / 6.0;
      r[i] = (y_[i + 1] - y_[i]) / h(i) - (y_[i] - y_[i - 1]) / h(i - 1);
    }
    // Not-a-knot right end: third derivative continuous across x_{n-2}.
    A[n - 1][n - 3] = 1.0 / h(n - 3);
    A[n - 1][n - 2] = -1.0 / h(n - 3) - 1.0 / h(n - 2);
    A[n - 1][n - 1] = 1.0 / h(n - 2);
    r[n - 1] = 0.0;

    m_ = solve(std::move(A), std::move(r));
  }

  double operator()(double x) const { return eval(x).first; }
  double derivative(double x) const { return eval(x).second; }

  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }

 private:
  std::pair<double, double> eval(double x) const {
    const std::size_t n = x_.size();
    std::size_t i = n - 2;
    if (x <= x_.front()) {
      i = 0;
    } else if (x < x_.back()) {
      std::size_t lo = 0, hi = n - 1;
      while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        (x_[mid] <= x ? lo : hi) = mid;
      }
      i = lo;
    }
    const double h = x_[i + 1] - x_[i];
    const double u = x_[i + 1] - x;
    const double v = x - x_[i];
    const double s = m_[i] * u * u * u / (6.0 * h) +
                     m_[i + 1] * v * v * v / (6.0 * h) +
                     (y_[i] / h - m_[i] * h / 6.0) * u +
                     (y_[i + 1] / h - m_[i + 1] * h / 6.0) * v;
    const double sp = -m_[i] * u * u / (2.0 * h) + m_[i + 1] * v * v / (2.0 * h) -
                      (y_[i] / h - m_[i] * h / 6.0) +
                      (y_[i + 1] / h - m_[i + 1] * h / 6.0);
    return {s, sp};
  }

  static std::vector<double> solve(std::vector<std::vector<double>> A,
                                   std::vector<double> r) {
    const std::size_t n = r.size();
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t piv = k;
      for (std::size_t i = k + 1; i < n; ++i)
        if (std::abs(A[i][k]) > std::abs(A[piv][k])) piv = i;
      std::swap(A[k], A[piv]);
      std::swap(r[k], r[piv]);
      if (A[k][k] == 0.0)
        throw std::runtime_error("CubicSpline: singular system");
      for (std::size_t i = k + 1; i < n; ++i) {
        const double m = A[i][k] / A[k][k];
        if (m == 0.0) continue;
        for (std::size_t j = k; j < n; ++j) A[i][j] -= m * A[k][j];
        r[i] -= m * r[k];
      }
    }
    std::vector<double> sol(n);
    for (std::size_t k = n; k-- > 0;) {
      double acc = r[k];
      for (std::size_t j = k + 1; j < n; ++j) acc -= A[k][j] * sol[j];
      sol[k] = acc / A[k][k];
    }
    return sol;
  }

  std::vector<double> x_, y_, m_;
};

}  // namespace deltadimer
