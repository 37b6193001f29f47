#include "qwalk/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace qwalk {

namespace {

std::int64_t component(const BasisLabel& label, Subsystem s) {
  switch (s) {
    case Subsystem::Pol:
      return static_cast<std::int64_t>(label.pol);
    case Subsystem::Pos:
      return label.x;
    case Subsystem::Freq:
      return label.f;
  }
  throw std::logic_error("component: unreachable");
}

std::vector<std::int64_t> key_of(const BasisLabel& label,
                                 const std::vector<Subsystem>& part) {
  std::vector<std::int64_t> key;
  key.reserve(part.size());
  for (Subsystem s : part) key.push_back(component(label, s));
  return key;
}

std::vector<Subsystem> complement(const std::vector<Subsystem>& part_a,
                                  const std::vector<Subsystem>& part_b) {
  std::vector<Subsystem> rest;
  for (Subsystem s :
       {Subsystem::Pol, Subsystem::Pos, Subsystem::Freq}) {
    const bool kept = std::find(part_a.begin(), part_a.end(), s) !=
                          part_a.end() ||
                      std::find(part_b.begin(), part_b.end(), s) !=
                          part_b.end();
    if (!kept) rest.push_back(s);
  }
  return rest;
}

}  // namespace

DensityMatrix reduced_density_matrix(const SparseState& state,
                                     const std::vector<Subsystem>& part_a,
                                     const std::vector<Subsystem>& part_b) {
  if (state.empty())
    throw std::invalid_argument("reduced_density_matrix: empty state");
  if (part_a.size() != 1)
    throw std::invalid_argument(
        "reduced_density_matrix: part_a must name exactly one subsystem");
  if (part_b.size() > 2)
    throw std::invalid_argument(
        "reduced_density_matrix: part_b names at most two subsystems");

  const std::vector<Subsystem> traced = complement(part_a, part_b);
  if (part_a.size() + part_b.size() + traced.size() != 3)
    throw std::invalid_argument(
        "reduced_density_matrix: parts must be disjoint subsystems");

  // Compacted index maps over the support labels only.
  std::map<std::vector<std::int64_t>, int> index_a, index_b;
  for (const auto& [label, amp] : state.entries()) {
    index_a.try_emplace(key_of(label, part_a), 0);
    index_b.try_emplace(key_of(label, part_b), 0);
  }
  {
    int i = 0;
    for (auto& [key, idx] : index_a) idx = i++;
    i = 0;
    for (auto& [key, idx] : index_b) idx = i++;
  }

  DensityMatrix rho;
  rho.dim_a = static_cast<int>(index_a.size());
  rho.dim_b = static_cast<int>(index_b.size());
  rho.labels_a.reserve(index_a.size());
  for (const auto& [key, idx] : index_a) rho.labels_a.push_back(key);
  rho.labels_b.reserve(index_b.size());
  for (const auto& [key, idx] : index_b) rho.labels_b.push_back(key);
  rho.data.assign(
      static_cast<std::size_t>(rho.dim()) * static_cast<std::size_t>(rho.dim()),
      {0.0, 0.0});

  // Group amplitudes by the traced-out key; each group contributes the outer
  // product of its kept-space vector.
  std::map<std::vector<std::int64_t>, std::vector<std::pair<int, Amplitude>>>
      groups;
  for (const auto& [label, amp] : state.entries()) {
    const int ia = index_a.at(key_of(label, part_a));
    const int ib = index_b.at(key_of(label, part_b));
    groups[key_of(label, traced)].emplace_back(ia * rho.dim_b + ib, amp);
  }
  for (const auto& [tr, vec] : groups)
    for (const auto& [r, ar] : vec)
      for (const auto& [c, ac] : vec) rho.at(r, c) += ar * std::conj(ac);

  return rho;
}

DensityMatrix reduced_density_matrix(const SparseState& state,
                                     const std::vector<Subsystem>& keep) {
  if (keep.size() == 1)
    return reduced_density_matrix(state, keep, {});
  if (keep.size() == 2)
    return reduced_density_matrix(state, {keep[0]}, {keep[1]});
  throw std::invalid_argument(
      "reduced_density_matrix: keep must name one or two subsystems");
}

DensityMatrix partial_transpose(const DensityMatrix& rho) {
  DensityMatrix out = rho;
  for (int a = 0; a < rho.dim_a; ++a)
    for (int ap = 0; ap < rho.dim_a; ++ap)
      for (int b = 0; b < rho.dim_b; ++b)
        for (int bp = 0; bp < rho.dim_b; ++bp)
          out.at(ap * rho.dim_b + b, a * rho.dim_b + bp) =
              rho.at(a * rho.dim_b + b, ap * rho.dim_b + bp);
  return out;
}

namespace {

NegativityReport negativity_impl(const SparseState& state,
                                 const std::vector<Subsystem>& part_a,
                                 const std::vector<Subsystem>& part_b,
                                 JacobiKernel kernel) {
  const DensityMatrix rho = reduced_density_matrix(state, part_a, part_b);
  const DensityMatrix pt = partial_transpose(rho);
  const std::vector<double> ev =
      hermitian_eigenvalues(pt.data, pt.dim(), 1e-8, kernel);

  NegativityReport report;
  report.dim_a = rho.dim_a;
  report.dim_b = rho.dim_b;

  double abs_sum = 0.0;
  for (double lambda : ev) {
    abs_sum += std::abs(lambda);
    if (lambda < 0.0) report.negative_eigenvalues.push_back(lambda);
  }
  double neg_sum = 0.0;
  for (double lambda : report.negative_eigenvalues) neg_sum -= lambda;
  const double trace_norm_form = (abs_sum - 1.0) / 2.0;
  if (std::abs(trace_norm_form - neg_sum) > 1e-9)
    throw std::runtime_error(
        "negativity: trace-norm and negative-eigenvalue forms disagree");

  report.raw = neg_sum;
  const int d_min = std::min(rho.dim_a, rho.dim_b);
  report.normalized =
      d_min <= 1 ? 0.0 : report.raw / ((d_min - 1) / 2.0);
  return report;
}

}  // namespace

NegativityReport negativity(const SparseState& state, Subsystem part_a,
                            Subsystem part_b, JacobiKernel kernel) {
  return negativity_impl(state, {part_a}, {part_b}, kernel);
}

NegativityReport negativity(const SparseState& state, Subsystem part_a,
                            std::pair<Subsystem, Subsystem> part_b,
                            JacobiKernel kernel) {
  return negativity_impl(state, {part_a}, {part_b.first, part_b.second},
                         kernel);
}

std::vector<NegativityReport> negativity_curve(
    const std::vector<SparseState>& run, Subsystem part_a, Subsystem part_b,
    JacobiKernel kernel) {
  std::vector<NegativityReport> curve;
  curve.reserve(run.size());
  for (const SparseState& state : run)
    curve.push_back(negativity(state, part_a, part_b, kernel));
  return curve;
}

SchmidtRankVector schmidt_rank_vector(const SparseState& state, double tol) {
  if (tol <= 0.0)
    throw std::invalid_argument("schmidt_rank_vector: tol must be > 0");
  const auto rank_of = [&](Subsystem s) {
    const DensityMatrix rho = reduced_density_matrix(state, {s}, {});
    const std::vector<double> ev =
        hermitian_eigenvalues(rho.data, rho.dim(), 1e-8);
    int rank = 0;
    for (double lambda : ev)
      if (lambda > tol) ++rank;
    return rank;
  };
  return {rank_of(Subsystem::Pol), rank_of(Subsystem::Pos),
          rank_of(Subsystem::Freq)};
}

}  // namespace qwalk
