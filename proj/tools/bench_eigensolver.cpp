// Compares the serial cyclic Jacobi kernel against the blocked round-robin
// kernel on random symmetric and Hermitian inputs of growing size.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <vector>

#include "qwalk/jacobi.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<double> random_symmetric(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> a(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v = dist(rng);
      a[static_cast<std::size_t>(i) * n + j] = v;
      a[static_cast<std::size_t>(j) * n + i] = v;
    }
  return a;
}

}  // namespace

int main() {
  std::mt19937_64 rng(12345);
  std::printf("%8s %12s %12s %12s %12s\n", "dim", "serial[s]", "blocked[s]",
              "speedup", "max|diff|");
  for (int n : {32, 64, 128, 256, 384}) {
    const std::vector<double> a = random_symmetric(n, rng);

    auto start = Clock::now();
    const std::vector<double> ev_serial =
        qwalk::jacobi_eigenvalues_serial(a, n);
    const double t_serial = seconds_since(start);

    start = Clock::now();
    const std::vector<double> ev_blocked =
        qwalk::jacobi_eigenvalues_blocked(a, n);
    const double t_blocked = seconds_since(start);

    double max_diff = 0.0;
    for (int i = 0; i < n; ++i)
      max_diff = std::max(max_diff,
                          std::abs(ev_serial[static_cast<std::size_t>(i)] -
                                   ev_blocked[static_cast<std::size_t>(i)]));

    std::printf("%8d %12.4f %12.4f %12.2f %12.3e\n", n, t_serial, t_blocked,
                t_serial / t_blocked, max_diff);
  }
  return 0;
}
