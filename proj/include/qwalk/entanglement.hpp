#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "qwalk/jacobi.hpp"
#include "qwalk/state.hpp"

namespace qwalk {

enum class Subsystem { Pol, Pos, Freq };

// Dense bipartite density matrix over compacted index spaces. Row/column
// index is a * dim_b + b; labels_a/labels_b map compacted indices back to
// the original labels (polarization encoded as 0/1). Each label is a tuple
// because a side of the bipartition may combine two subsystems.
struct DensityMatrix {
  int dim_a{1};
  int dim_b{1};
  std::vector<std::complex<double>> data;
  std::vector<std::vector<std::int64_t>> labels_a;
  std::vector<std::vector<std::int64_t>> labels_b;

  int dim() const { return dim_a * dim_b; }

  std::complex<double>& at(int i, int j) {
    return data[static_cast<std::size_t>(i) * dim() + j];
  }
  const std::complex<double>& at(int i, int j) const {
    return data[static_cast<std::size_t>(i) * dim() + j];
  }

  double trace() const {
    double t = 0.0;
    for (int i = 0; i < dim(); ++i) t += at(i, i).real();
    return t;
  }
};

// Reduced density matrix with explicit bipartition part_a vs part_b; the
// subsystems named in neither list are traced out. part_a must name exactly
// one subsystem; part_b may name zero (rank diagnostics), one, or two.
DensityMatrix reduced_density_matrix(const SparseState& state,
                                     const std::vector<Subsystem>& part_a,
                                     const std::vector<Subsystem>& part_b);

// Spec'd convenience form: keep one subsystem (dim_b = 1) or two (the first
// is part A).
DensityMatrix reduced_density_matrix(const SparseState& state,
                                     const std::vector<Subsystem>& keep);

// Transpose over part A: ((a,b),(a',b')) -> ((a',b),(a,b')).
DensityMatrix partial_transpose(const DensityMatrix& rho);

struct NegativityReport {
  double raw{0.0};
  double normalized{0.0};
  std::vector<double> negative_eigenvalues;
  int dim_a{1};
  int dim_b{1};
};

// Negativity of `state` across part_a vs part_b after tracing out the rest:
// raw = sum |negative eigenvalues of rho^Gamma_A|, cross-checked against
// (trace norm - 1)/2; normalized divides by (d_min - 1)/2 (0 when
// d_min = 1).
NegativityReport negativity(const SparseState& state, Subsystem part_a,
                            Subsystem part_b,
                            JacobiKernel kernel = JacobiKernel::Blocked);
NegativityReport negativity(const SparseState& state, Subsystem part_a,
                            std::pair<Subsystem, Subsystem> part_b,
                            JacobiKernel kernel = JacobiKernel::Blocked);

// One report per element of `run` (element k is the k-step state).
std::vector<NegativityReport> negativity_curve(
    const std::vector<SparseState>& run, Subsystem part_a, Subsystem part_b,
    JacobiKernel kernel = JacobiKernel::Blocked);

struct SchmidtRankVector {
  int r_pol{0};
  int r_pos{0};
  int r_freq{0};
};

// Numerical ranks (eigenvalues > tol) of the three single-subsystem reduced
// density matrices.
SchmidtRankVector schmidt_rank_vector(const SparseState& state,
                                      double tol = 1e-10);

}  // namespace qwalk
