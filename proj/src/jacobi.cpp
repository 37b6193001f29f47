#include "qwalk/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qwalk {

namespace {

// Rotation parameters (c, s) zeroing a_pq of the 2x2 pivot
// [[a_pp, a_pq], [a_pq, a_qq]].
inline void rotation(double app, double aqq, double apq, double& c,
                     double& s) {
  const double tau = (aqq - app) / (2.0 * apq);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  c = 1.0 / std::sqrt(1.0 + t * t);
  s = t * c;
}

double max_off_diagonal(const std::vector<double>& a, int n) {
  double m = 0.0;
#ifdef _OPENMP
#pragma omp parallel for reduction(max : m) schedule(static)
#endif
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      m = std::max(m, std::abs(a[static_cast<std::size_t>(i) * n + j]));
  return m;
}

std::vector<double> diagonal_sorted(const std::vector<double>& a, int n) {
  std::vector<double> ev(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    ev[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i) * n + i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

[[noreturn]] void not_converged(int max_sweeps) {
  throw std::runtime_error("jacobi: no convergence after " +
                           std::to_string(max_sweeps) + " sweeps");
}

}  // namespace

std::vector<double> jacobi_eigenvalues_serial(std::vector<double> a, int n,
                                              double tol, int max_sweeps) {
  if (n <= 0) return {};
  const auto idx = [n](int i, int j) {
    return static_cast<std::size_t>(i) * n + j;
  };

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (max_off_diagonal(a, n) < tol) return diagonal_sorted(a, n);
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[idx(p, q)];
        if (std::abs(apq) < 0.1 * tol) continue;
        double c, s;
        rotation(a[idx(p, p)], a[idx(q, q)], apq, c, s);
        // A <- J^T A J, touching only rows/columns p and q.
        for (int k = 0; k < n; ++k) {
          const double akp = a[idx(k, p)];
          const double akq = a[idx(k, q)];
          a[idx(k, p)] = c * akp - s * akq;
          a[idx(k, q)] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[idx(p, k)];
          const double aqk = a[idx(q, k)];
          a[idx(p, k)] = c * apk - s * aqk;
          a[idx(q, k)] = s * apk + c * aqk;
        }
      }
    }
  }
  if (max_off_diagonal(a, n) < tol) return diagonal_sorted(a, n);
  not_converged(max_sweeps);
}

std::vector<double> jacobi_eigenvalues_blocked(std::vector<double> a, int n,
                                               double tol, int max_sweeps) {
  if (n <= 0) return {};
  if (n == 1) return {a[0]};

  // Round-robin tournament over m slots; slot m-1 is a bye when n is odd.
  const int m = (n % 2 == 0) ? n : n + 1;
  std::vector<int> slot(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) slot[static_cast<std::size_t>(i)] = i;

  const int pairs = m / 2;
  std::vector<double> cs(static_cast<std::size_t>(pairs));
  std::vector<double> sn(static_cast<std::size_t>(pairs));
  std::vector<int> pp(static_cast<std::size_t>(pairs));
  std::vector<int> qq(static_cast<std::size_t>(pairs));
  const auto idx = [n](int i, int j) {
    return static_cast<std::size_t>(i) * n + j;
  };

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (max_off_diagonal(a, n) < tol) return diagonal_sorted(a, n);
    for (int round = 0; round < m - 1; ++round) {
      // Disjoint pivot set for this round; identity rotation for pairs that
      // involve the bye slot or are already negligible.
      int active = 0;
      for (int k = 0; k < pairs; ++k) {
        int p = slot[static_cast<std::size_t>(k)];
        int q = slot[static_cast<std::size_t>(m - 1 - k)];
        if (p > q) std::swap(p, q);
        if (q >= n) continue;
        const double apq = a[idx(p, q)];
        if (std::abs(apq) < 0.1 * tol) continue;
        pp[static_cast<std::size_t>(active)] = p;
        qq[static_cast<std::size_t>(active)] = q;
        rotation(a[idx(p, p)], a[idx(q, q)], apq,
                 cs[static_cast<std::size_t>(active)],
                 sn[static_cast<std::size_t>(active)]);
        ++active;
      }

      if (active > 0) {
        // A <- A J: each row independent.
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (int i = 0; i < n; ++i) {
          double* row = a.data() + static_cast<std::size_t>(i) * n;
          for (int k = 0; k < active; ++k) {
            const double c = cs[static_cast<std::size_t>(k)];
            const double s = sn[static_cast<std::size_t>(k)];
            const int p = pp[static_cast<std::size_t>(k)];
            const int q = qq[static_cast<std::size_t>(k)];
            const double ap = row[p];
            const double aq = row[q];
            row[p] = c * ap - s * aq;
            row[q] = s * ap + c * aq;
          }
        }
        // A <- J^T A: pairs touch disjoint row pairs.
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (int k = 0; k < active; ++k) {
          const double c = cs[static_cast<std::size_t>(k)];
          const double s = sn[static_cast<std::size_t>(k)];
          double* rowp =
              a.data() + static_cast<std::size_t>(pp[static_cast<std::size_t>(k)]) * n;
          double* rowq =
              a.data() + static_cast<std::size_t>(qq[static_cast<std::size_t>(k)]) * n;
          for (int j = 0; j < n; ++j) {
            const double vp = rowp[j];
            const double vq = rowq[j];
            rowp[j] = c * vp - s * vq;
            rowq[j] = s * vp + c * vq;
          }
        }
      }

      // Advance the tournament: slot 0 fixed, the rest rotate.
      const int last = slot[static_cast<std::size_t>(m - 1)];
      for (int i = m - 1; i > 1; --i)
        slot[static_cast<std::size_t>(i)] = slot[static_cast<std::size_t>(i - 1)];
      slot[1] = last;
    }
  }
  if (max_off_diagonal(a, n) < tol) return diagonal_sorted(a, n);
  not_converged(max_sweeps);
}

std::vector<double> hermitian_eigenvalues(
    const std::vector<std::complex<double>>& m, int n, double herm_tol,
    JacobiKernel kernel, double tol) {
  if (n <= 0) return {};
  if (m.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw std::invalid_argument("hermitian_eigenvalues: size mismatch");

  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const std::complex<double> defect =
          m[static_cast<std::size_t>(i) * n + j] -
          std::conj(m[static_cast<std::size_t>(j) * n + i]);
      if (std::abs(defect) > herm_tol)
        throw std::invalid_argument(
            "hermitian_eigenvalues: matrix not Hermitian at entries (" +
            std::to_string(i) + "," + std::to_string(j) + ")/(" +
            std::to_string(j) + "," + std::to_string(i) + ")");
    }
  }

  // Real embedding B = [[X, -Y], [Y, X]] of M = X + iY; B is symmetric and
  // carries each eigenvalue of M twice.
  const int d = 2 * n;
  std::vector<double> b(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::complex<double> v = m[static_cast<std::size_t>(i) * n + j];
      b[static_cast<std::size_t>(i) * d + j] = v.real();
      b[static_cast<std::size_t>(i) * d + (n + j)] = -v.imag();
      b[static_cast<std::size_t>(n + i) * d + j] = v.imag();
      b[static_cast<std::size_t>(n + i) * d + (n + j)] = v.real();
    }
  }

  std::vector<double> doubled =
      kernel == JacobiKernel::Serial
          ? jacobi_eigenvalues_serial(std::move(b), d, tol)
          : jacobi_eigenvalues_blocked(std::move(b), d, tol);

  std::vector<double> ev(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    ev[static_cast<std::size_t>(i)] =
        0.5 * (doubled[static_cast<std::size_t>(2 * i)] +
               doubled[static_cast<std::size_t>(2 * i) + 1]);
  return ev;
}

}  // namespace qwalk
