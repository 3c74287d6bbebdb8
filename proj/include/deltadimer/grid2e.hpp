#pragma once

// Two-electron ground state on a uniform grid: the Hamiltonian
//
//   H = -(1/2)(d2/dz1^2 + d2/dz2^2)
//       - sum_i [delta(z1 - s_i) + delta(z2 - s_i)]
//       + (1/Z) delta(z1 - z2),        s_i in {-a, +a},
//
// discretized on the square [-box, box]^2 with Dirichlet walls, the
// 5-point Laplacian, and on-grid contact terms (a diagonal -1/h per well
// line and +1/(Z h) on z1 = z2). The ground state is symmetric under
// electron exchange, so everything is solved in the exactly folded
// symmetric sector on p <= q, which halves the unknowns; the folded
// operator's spectrum is the symmetric-sector spectrum, no approximation.
//
// Contact terms on grid lines converge at second order here (verified by
// halving studies; the eigenvalue error ratio is ~4 per halving), so the
// two-grid refinement below uses the second-order elimination.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "one_electron.hpp"

namespace deltadimer {

struct GridSpec {
  double box;        // half-width of the square domain
  double h;          // grid spacing; box/h is integral
  double a_snapped;  // well half-separation, snapped onto the grid
};

// Validates box/h and snaps the requested separation onto the grid.
inline GridSpec make_grid(double box, double h, double a) {
  if (!(h > 0.0)) throw std::invalid_argument("make_grid: h must be positive");
  if (!(box >= 10.0))
    throw std::invalid_argument("make_grid: box must be at least 10");
  if (!(a >= 0.0)) throw std::domain_error("make_grid: a must be >= 0");
  const double m_real = box / h;
  const long m = std::lround(m_real);
  if (m < 2 || std::abs(m_real - static_cast<double>(m)) > 1e-9 * m_real)
    throw std::invalid_argument("make_grid: box/h must be integral");
  const long ia = std::lround(a / h);
  if (static_cast<double>(ia) * h > box - 2.0 * h)
    throw std::invalid_argument("make_grid: wells too close to the wall");
  return {box, h, static_cast<double>(ia) * h};
}

// Grid whose spacing divides the separation exactly, near the target
// spacing, with the box stretched to the nearest multiple of h at or above
// the target box. Both members of an (h, h/2) pair then carry the wells on
// grid lines, which is what makes the two-grid elimination honest.
inline GridSpec grid_for_separation(double a, double h_target = 0.05,
                                    double box_target = 12.0) {
  double h = h_target;
  if (a > 0.0) {
    long k = std::lround(a / h_target);
    if (k < 1) k = 1;
    h = a / static_cast<double>(k);
    if (h > 1.25 * h_target) h = a / static_cast<double>(k + 1);
  }
  long m = std::lround(box_target / h);
  while (static_cast<double>(m) * h < 10.0) ++m;
  return make_grid(static_cast<double>(m) * h, h, a);
}

namespace detail {

inline long side_points(const GridSpec& g) {
  return 2 * std::lround(g.box / g.h) - 1;
}

inline bool is_infinite_z(double Z) {
  return Z == std::numeric_limits<double>::infinity();
}

inline void check_z(double Z) {
  if (!(Z > 0.0) && !is_infinite_z(Z))
    throw std::domain_error("well strength Z must be positive or +infinity");
}

// Diagonal of the one-particle contact wells on the interior points
// z_i = -box + (i+1) h: each well contributes -1/h on its line (they merge
// to -2/h when a snaps to zero).
inline std::vector<double> well_diagonal(const GridSpec& g) {
  const long m = std::lround(g.box / g.h);
  const long ia = std::lround(g.a_snapped / g.h);
  const long n = 2 * m - 1;
  std::vector<double> wd(static_cast<std::size_t>(n), 0.0);
  wd[static_cast<std::size_t>(m - ia - 1)] -= 1.0 / g.h;
  wd[static_cast<std::size_t>(m + ia - 1)] -= 1.0 / g.h;
  return wd;
}

// --- discrete one-particle problem (tridiagonal), used for the spectral
// --- shift and the deterministic seed ---------------------------------

// Eigenvalue count below x, from the sign pattern of the LDL recurrence.
inline int sturm_count_below(const std::vector<double>& d, double e,
                             double x) {
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    q = (i == 0) ? d[0] - x : (d[i] - x) - e * e / q;
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

// k-th smallest eigenvalue (k = 1, 2, ...) of the symmetric tridiagonal with
// constant off-diagonal e, by Sturm bisection inside the Gershgorin bounds.
inline double sturm_eigenvalue(const std::vector<double>& d, double e,
                               int k) {
  double lo = d[0], hi = d[0];
  for (double di : d) {
    lo = std::min(lo, di);
    hi = std::max(hi, di);
  }
  lo -= 2.0 * std::abs(e);
  hi += 2.0 * std::abs(e);
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo));
       ++it) {
    const double mid = 0.5 * (lo + hi);
    (sturm_count_below(d, e, mid) >= k ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

struct Discrete1D {
  double mu1;                // lowest eigenvalue
  double mu2;                // second eigenvalue
  std::vector<double> phi;   // ground vector, unit Euclidean norm, positive
};

// Ground data of the discrete one-particle operator on the grid: Sturm
// bisection for the eigenvalues, then inverse iteration with the Thomas
// solve for the vector (the shifted matrix stays positive definite).
inline Discrete1D discrete_one_particle(const GridSpec& g) {
  const long n = side_points(g);
  const double e = -0.5 / (g.h * g.h);
  std::vector<double> d = well_diagonal(g);
  for (auto& di : d) di += 1.0 / (g.h * g.h);

  Discrete1D out;
  out.mu1 = sturm_eigenvalue(d, e, 1);
  out.mu2 = sturm_eigenvalue(d, e, 2);

  const double sigma = out.mu1 - 1e-8 * std::max(1.0, std::abs(out.mu1));
  const std::size_t un = static_cast<std::size_t>(n);
  std::vector<double> v(un), c(un), w(un);
  // seed with the continuum bound state sampled on the grid
  const OneElectronState st = one_electron_state(g.a_snapped);
  for (std::size_t i = 0; i < un; ++i)
    v[i] = phi0(st, -g.box + (static_cast<double>(i) + 1.0) * g.h);
  for (int sweep = 0; sweep < 8; ++sweep) {
    // Thomas solve of (T - sigma) w = v
    double piv = d[0] - sigma;
    c[0] = e / piv;
    w[0] = v[0] / piv;
    for (std::size_t i = 1; i < un; ++i) {
      piv = (d[i] - sigma) - e * c[i - 1];
      c[i] = e / piv;
      w[i] = (v[i] - e * w[i - 1]) / piv;
    }
    for (std::size_t i = un - 1; i-- > 0;) w[i] -= c[i] * w[i + 1];
    double nrm = 0.0;
    for (double wi : w) nrm += wi * wi;
    nrm = std::sqrt(nrm);
    double diff = 0.0;
    for (std::size_t i = 0; i < un; ++i) {
      const double wn = w[i] / nrm;
      diff = std::max(diff, std::abs(wn - v[i]));
      v[i] = wn;
    }
    if (diff < 1e-13) break;
  }
  double s = 0.0;
  for (double vi : v) s += vi;
  if (s < 0.0)
    for (auto& vi : v) vi = -vi;
  out.phi = std::move(v);
  return out;
}

// --- folded two-particle operator --------------------------------------

inline std::int64_t fold_index(long p, long q, long n) {
  return static_cast<std::int64_t>(p) * n - static_cast<std::int64_t>(p) * (p - 1) / 2 +
         (q - p);
}

inline std::int64_t fold_size(long n) {
  return static_cast<std::int64_t>(n) * (n + 1) / 2;
}

// Folded symmetric-sector matrix of H - sigma I on the pairs p <= q. Basis:
// |pp> as is, (|pq> + |qp>)/sqrt(2) for p < q; couplings between a diagonal
// state and a pair state pick up the sqrt(2), everything else keeps the
// plain stencil weights. Each undirected folded edge is emitted exactly
// once (as two triplets).
inline Eigen::SparseMatrix<double> assemble_folded(const GridSpec& g, double Z,
                                                   double sigma) {
  check_z(Z);
  const long n = side_points(g);
  const std::int64_t nf = fold_size(n);
  if (5 * nf > 50000000)
    throw std::length_error("assemble_folded: grid exceeds the nonzero budget");

  const double h2 = g.h * g.h;
  const double kin_diag = 2.0 / h2;
  const double hop = -0.5 / h2;
  const double hop_mix = hop * std::sqrt(2.0);
  const double rep = is_infinite_z(Z) ? 0.0 : 1.0 / (Z * g.h);
  const std::vector<double> wd = well_diagonal(g);

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(5 * nf));
  for (long p = 0; p < n; ++p) {
    const std::int64_t row_base = fold_index(p, p, n);
    for (long q = p; q < n; ++q) {
      const std::int64_t k = row_base + (q - p);
      double diag = kin_diag + wd[static_cast<std::size_t>(p)] +
                    wd[static_cast<std::size_t>(q)] - sigma;
      if (p == q) diag += rep;
      trip.emplace_back(k, k, diag);
      if (q + 1 < n) {  // (p, q) -> (p, q+1); covers both mirror edges when p == q
        const std::int64_t k2 = fold_index(p, q + 1, n);
        const double val = (p == q) ? hop_mix : hop;
        trip.emplace_back(k, k2, val);
        trip.emplace_back(k2, k, val);
      }
      if (p < q) {  // (p, q) -> (p+1, q), sorted since p+1 <= q
        const std::int64_t k2 = fold_index(p + 1, q, n);
        const double val = (p + 1 == q) ? hop_mix : hop;
        trip.emplace_back(k, k2, val);
        trip.emplace_back(k2, k, val);
      }
    }
  }
  Eigen::SparseMatrix<double> K(nf, nf);
  K.setFromTriplets(trip.begin(), trip.end());
  K.makeCompressed();
  return K;
}

struct EigStats {
  int iterations = 0;
  double residual = std::numeric_limits<double>::infinity();
};

// Smallest eigenpair of H = K + sigma I by Lanczos on K^{-1} (sparse LDLT),
// with full two-pass reorthogonalization and single-vector restarts.
// Deterministic for a fixed seed. The returned residual is the explicit
// ||H x - lambda x|| with ||x|| = 1.
inline std::pair<double, Eigen::VectorXd> lowest_by_shift_invert(
    const Eigen::SparseMatrix<double>& K, double sigma,
    const Eigen::VectorXd& seed, double tol, int max_iter,
    EigStats* stats = nullptr) {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  ldlt.compute(K);
  if (ldlt.info() != Eigen::Success)
    throw NonConvergence("lowest_by_shift_invert: LDLT factorization failed");

  constexpr int m_max = 40;
  std::vector<Eigen::VectorXd> V;
  V.reserve(m_max);
  std::vector<double> alpha, beta;  // Lanczos coefficients of the current block
  alpha.reserve(m_max);
  beta.reserve(m_max);

  Eigen::VectorXd v = seed / seed.norm();
  int total = 0;
  while (total < max_iter) {
    V.clear();
    alpha.clear();
    beta.clear();
    V.push_back(v);
    Eigen::VectorXd x;
    double lambda = 0.0;
    for (int j = 0; j < m_max && total < max_iter; ++j, ++total) {
      Eigen::VectorXd w = ldlt.solve(V.back());
      alpha.push_back(V.back().dot(w));
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& vi : V) w -= vi.dot(w) * vi;
      const double b = w.norm();

      // Ritz data of the (j+1) x (j+1) tridiagonal block.
      const int mdim = j + 1;
      Eigen::MatrixXd T = Eigen::MatrixXd::Zero(mdim, mdim);
      for (int i = 0; i < mdim; ++i) T(i, i) = alpha[static_cast<std::size_t>(i)];
      for (int i = 0; i + 1 < mdim; ++i)
        T(i, i + 1) = T(i + 1, i) = beta[static_cast<std::size_t>(i)];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
      const int top = mdim - 1;  // largest of K^{-1} = ground state of H
      const double theta = es.eigenvalues()(top);
      x = Eigen::VectorXd::Zero(V.front().size());
      for (int i = 0; i < mdim; ++i)
        x += es.eigenvectors()(i, top) * V[static_cast<std::size_t>(i)];
      x /= x.norm();
      lambda = sigma + 1.0 / theta;
      const double resid = (K * x - (lambda - sigma) * x).norm();
      if (stats != nullptr) {
        stats->iterations = total + 1;
        stats->residual = resid;
      }
      if (resid <= tol) return {lambda, x};

      if (b < 1e-13) break;  // Krylov space exhausted; restart from the Ritz vector
      beta.push_back(b);
      V.push_back(w / b);
    }
    v = x;  // restart
  }
  throw NonConvergence("lowest_by_shift_invert: iteration cap reached");
}

// Folded ground-state solve shared by the public entry points.
struct FoldedGround {
  double energy;
  Eigen::VectorXd folded;
  EigStats stats;
};

inline FoldedGround solve_folded(const GridSpec& g, double Z) {
  const Discrete1D one = discrete_one_particle(g);
  // Repulsion is nonnegative and the repulsion-free problem separates on the
  // grid, so 2 mu1 bounds the two-particle spectrum from below exactly; the
  // margin only keeps the factorization away from singularity.
  const double sigma = 2.0 * one.mu1 - 0.5;
  const Eigen::SparseMatrix<double> K = assemble_folded(g, Z, sigma);

  const long n = side_points(g);
  Eigen::VectorXd seed(fold_size(n));
  const double rt2 = std::sqrt(2.0);
  for (long p = 0; p < n; ++p) {
    const std::int64_t base = fold_index(p, p, n);
    const double fp = one.phi[static_cast<std::size_t>(p)];
    for (long q = p; q < n; ++q) {
      const double fq = one.phi[static_cast<std::size_t>(q)];
      seed[base + (q - p)] = (p == q) ? fp * fq : rt2 * fp * fq;
    }
  }

  FoldedGround out;
  auto [lambda, x] = lowest_by_shift_invert(K, sigma, seed, 1e-8, 10000,
                                            &out.stats);
  // The folded ground vector is sign-definite; report it positive.
  if (x.sum() < 0.0) x = -x;
  out.energy = lambda;
  out.folded = std::move(x);
  return out;
}

}  // namespace detail

// Full-square Hamiltonian on the interior points, row-major in (z1, z2).
// Mostly a reference object: the solver works on the folded form, and the
// test suite checks the two agree. Z = +infinity switches the contact
// repulsion off (non-interacting reference).
inline Eigen::SparseMatrix<double> assemble_hamiltonian(const GridSpec& g,
                                                        double Z) {
  detail::check_z(Z);
  const long n = detail::side_points(g);
  const std::int64_t N = static_cast<std::int64_t>(n) * n;
  if (5 * N > 50000000)
    throw std::length_error("assemble_hamiltonian: grid exceeds the nonzero budget");

  const double h2 = g.h * g.h;
  const double hop = -0.5 / h2;
  const double rep = detail::is_infinite_z(Z) ? 0.0 : 1.0 / (Z * g.h);
  const std::vector<double> wd = detail::well_diagonal(g);

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(5 * N));
  for (long p = 0; p < n; ++p) {
    for (long q = 0; q < n; ++q) {
      const std::int64_t k = static_cast<std::int64_t>(p) * n + q;
      double diag = 2.0 / h2 + wd[static_cast<std::size_t>(p)] +
                    wd[static_cast<std::size_t>(q)];
      if (p == q) diag += rep;
      trip.emplace_back(k, k, diag);
      if (p + 1 < n) {
        trip.emplace_back(k, k + n, hop);
        trip.emplace_back(k + n, k, hop);
      }
      if (q + 1 < n) {
        trip.emplace_back(k, k + 1, hop);
        trip.emplace_back(k + 1, k, hop);
      }
    }
  }
  Eigen::SparseMatrix<double> H(N, N);
  H.setFromTriplets(trip.begin(), trip.end());
  H.makeCompressed();
  return H;
}

struct GroundStateResult {
  double energy;
  Eigen::VectorXd vector;  // full-square eigenfunction, row-major, unit norm,
                           // exchange-symmetric by construction
  double residual;         // explicit ||H v - energy v||
  int iterations;
  GridSpec grid;
};

// Ground state at separation a (snapped onto the given grid's lines) and
// well strength Z. Deterministic: the Krylov seed is the product of the
// discrete one-particle ground vectors.
inline GroundStateResult ground_state(double a, double Z,
                                      const GridSpec& grid) {
  const GridSpec g = make_grid(grid.box, grid.h, a);
  detail::FoldedGround f = detail::solve_folded(g, Z);

  const long n = detail::side_points(g);
  Eigen::VectorXd full(static_cast<std::int64_t>(n) * n);
  const double inv_rt2 = 1.0 / std::sqrt(2.0);
  for (long p = 0; p < n; ++p) {
    const std::int64_t base = detail::fold_index(p, p, n);
    for (long q = p; q < n; ++q) {
      const double val =
          (p == q) ? f.folded[base] : inv_rt2 * f.folded[base + (q - p)];
      full[static_cast<std::int64_t>(p) * n + q] = val;
      full[static_cast<std::int64_t>(q) * n + p] = val;
    }
  }
  return {f.energy, std::move(full), f.stats.residual, f.stats.iterations, g};
}

namespace detail {

// Process-wide energy memo: the acceptance path and the molecule layer ask
// for the same (grid, Z) solves repeatedly. Only energies are kept; vectors
// are large and rebuilt on demand.
inline double cached_energy(const GridSpec& g, double Z) {
  using Key = std::array<std::int64_t, 4>;
  static std::map<Key, double> cache;
  static std::mutex mtx;
  const auto quant = [](double x) {
    return static_cast<std::int64_t>(std::llround(x * 1e9));
  };
  const Key key{quant(g.box), quant(g.h), quant(g.a_snapped),
                is_infinite_z(Z) ? std::int64_t{-1} : quant(Z)};
  {
    std::lock_guard<std::mutex> lock(mtx);
    const auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const double e = solve_folded(g, Z).energy;
  std::lock_guard<std::mutex> lock(mtx);
  cache.emplace(key, e);
  return e;
}

}  // namespace detail

struct EnergyEstimate {
  double value;
  double error_estimate;
  GridSpec coarse;
  GridSpec fine;
};

// Electronic ground energy at separation a, eliminated across the (h, h/2)
// refinement pair: e = (4 e_fine - e_coarse) / 3 removes the second-order
// grid bias. The error estimate |e_coarse - e_fine| / 6 is half the size of
// the removed term; halving studies put the residual of the eliminated
// value well below it. Throws AccuracyNotReached when the estimate misses
// the requested accuracy, and for 0 < a < 0.04 where no grid with the wells
// on both pair members fits the nonzero budget.
inline EnergyEstimate e_electronic_estimate(double a, double Z,
                                            double accuracy = 2e-3,
                                            double h_target = 0.05,
                                            double box_target = 12.0) {
  detail::check_z(Z);
  if (!(a >= 0.0)) throw std::domain_error("e_electronic: a must be >= 0");
  if (!(accuracy >= 1e-3))
    throw std::invalid_argument("e_electronic: accuracy floor is 1e-3");
  if (a > 0.0 && a < 0.8 * h_target)
    throw AccuracyNotReached(
        "e_electronic: no grid-aligned refinement pair below 0.8 of the "
        "target spacing; nearest supported separations are 0 and " +
        std::to_string(0.8 * h_target));

  const GridSpec coarse = grid_for_separation(a, h_target, box_target);
  const GridSpec fine = make_grid(coarse.box, coarse.h / 2.0, a);
  const double ec = detail::cached_energy(coarse, Z);
  const double ef = detail::cached_energy(fine, Z);
  const double value = (4.0 * ef - ec) / 3.0;
  const double est = std::abs(ec - ef) / 6.0;
  if (est > accuracy)
    throw AccuracyNotReached("e_electronic: error estimate " +
                             std::to_string(est) + " exceeds requested " +
                             std::to_string(accuracy));
  return {value, est, coarse, fine};
}

inline double e_electronic(double a, double Z, double accuracy = 2e-3) {
  return e_electronic_estimate(a, Z, accuracy).value;
}

// Same elimination on a coarser/custom grid pair; used by validation code
// that trades accuracy for speed. The default-spacing entry point above is
// the production path.
inline double e_electronic_on(double a, double Z, double accuracy,
                              double h_target, double box_target) {
  return e_electronic_estimate(a, Z, accuracy, h_target, box_target).value;
}

// d e / d a from the converged eigenfunction: line integrals of psi times
// the *mean* of the two one-sided normal derivatives across each well line,
// summed over wells with their displacement signs and doubled for the two
// electrons. The eigenfunction kinks on the well lines, and the mean of the
// one-sided slopes (equivalently, the centered difference across the kink)
// is the value consistent with the closed-form one-electron derivative;
// either one-sided slope alone is off by a factor ~2.4.
inline double e_prime_fh(double a, double Z, const GridSpec& grid) {
  const GridSpec g = make_grid(grid.box, grid.h, a);
  if (!(g.a_snapped > 0.0))
    throw std::domain_error("e_prime_fh: separation snaps to zero on this grid");
  const GroundStateResult r = ground_state(a, Z, g);

  const long n = detail::side_points(g);
  const long m = std::lround(g.box / g.h);
  const long ia = std::lround(g.a_snapped / g.h);
  const long ip = m + ia - 1;  // line z1 = +a
  const long im = m - ia - 1;  // line z1 = -a
  auto line_integral = [&](long i0) {
    double s = 0.0;
    for (long j = 0; j < n; ++j)
      s += r.vector[static_cast<std::int64_t>(i0) * n + j] *
           (r.vector[static_cast<std::int64_t>(i0 + 1) * n + j] -
            r.vector[static_cast<std::int64_t>(i0 - 1) * n + j]);
    return s / (2.0 * g.h * g.h);
  };
  return 4.0 * (line_integral(im) - line_integral(ip));
}

// e'(a -> 0+): the derivative above at a = 0.02, 0.04, 0.08 on one h = 0.02
// grid (all three separations sit on its lines), linearly extrapolated to
// zero separation. Memoized per Z; these are among the costliest solves in
// the library and the molecule layer asks for them repeatedly.
inline double e_prime_zero_limit(double Z) {
  detail::check_z(Z);
  static std::map<double, double> memo;
  static std::mutex mtx;
  {
    std::lock_guard<std::mutex> lock(mtx);
    const auto it = memo.find(Z);
    if (it != memo.end()) return it->second;
  }
  const std::array<double, 3> as{0.02, 0.04, 0.08};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const double a : as) {
    const GridSpec g = make_grid(10.0, 0.02, a);
    const double y = e_prime_fh(a, Z, g);
    sx += a;
    sy += y;
    sxx += a * a;
    sxy += a * y;
  }
  const double nn = static_cast<double>(as.size());
  const double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / nn;
  std::lock_guard<std::mutex> lock(mtx);
  memo.emplace(Z, intercept);
  return intercept;
}

// CSV dump of a converged eigenfunction: a header line naming the metadata,
// the metadata values, then the n x n grid values row-major, one grid row
// per line, 17 significant digits.
inline void write_eigenvector_csv(const GroundStateResult& r, double Z,
                                  const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (fp == nullptr)
    throw std::runtime_error("write_eigenvector_csv: cannot open " + path);
  std::fprintf(fp, "box,h,a_snapped,Z,energy\n");
  std::fprintf(fp, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.grid.box, r.grid.h,
               r.grid.a_snapped, Z, r.energy);
  const long n = detail::side_points(r.grid);
  for (long p = 0; p < n; ++p) {
    for (long q = 0; q < n; ++q)
      std::fprintf(fp, q == 0 ? "%.17g" : ",%.17g",
                   r.vector[static_cast<std::int64_t>(p) * n + q]);
    std::fputc('\n', fp);
  }
  std::fclose(fp);
}

}  // namespace deltadimer
