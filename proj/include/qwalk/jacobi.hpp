#pragma once

#include <complex>
#include <vector>

namespace qwalk {

// Which Jacobi kernel backs an eigensolve. Serial is the cyclic reference
// implementation; Blocked applies round-robin sets of disjoint rotations
// with OpenMP-parallel row updates and is the default.
enum class JacobiKernel { Serial, Blocked };

// Eigenvalues of a real symmetric n x n matrix (row-major), ascending.
// Cyclic Jacobi sweeps, one rotation at a time. Converged when the largest
// off-diagonal magnitude drops below `tol`.
std::vector<double> jacobi_eigenvalues_serial(std::vector<double> a, int n,
                                              double tol = 1e-12,
                                              int max_sweeps = 100);

// Same contract as the serial kernel; round-robin ordering applies n/2
// disjoint rotations per round so the two matrix passes parallelize over
// rows.
std::vector<double> jacobi_eigenvalues_blocked(std::vector<double> a, int n,
                                               double tol = 1e-12,
                                               int max_sweeps = 100);

// Eigenvalues of a complex Hermitian n x n matrix (row-major), ascending.
// Solved on the 2n x 2n real symmetric embedding [[X, -Y], [Y, X]] of
// M = X + iY; the doubled spectrum is collapsed by pairing sorted values.
// Rejects input whose Hermiticity defect exceeds `herm_tol`, naming the
// offending entry pair.
std::vector<double> hermitian_eigenvalues(
    const std::vector<std::complex<double>>& m, int n,
    double herm_tol = 1e-8, JacobiKernel kernel = JacobiKernel::Blocked,
    double tol = 1e-12);

}  // namespace qwalk
