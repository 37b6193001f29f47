#include "qwalk/state.hpp"

namespace qwalk {

SparseState basis_state(const BasisLabel& label) {
  SparseState s;
  s.set(label, Amplitude{1.0, 0.0});
  return s;
}

SparseState initial_coin_state(double delta, double eta, std::int64_t x0) {
  SparseState s;
  const Amplitude h{std::cos(delta), 0.0};
  const Amplitude v = std::exp(Amplitude{0.0, -eta}) * std::sin(delta);
  s.set({Polarization::H, x0, 0}, h);
  s.set({Polarization::V, x0, 0}, v);
  return s;
}

SparseState initial_photon_state(double delta) {
  SparseState s;
  s.set({Polarization::H, 0, 0}, Amplitude{std::cos(delta), 0.0});
  s.set({Polarization::V, 0, 0}, Amplitude{-std::sin(delta), 0.0});
  return s;
}

double norm(const SparseState& s) {
  double n2 = 0.0;
  for (const auto& [label, amp] : s.entries()) n2 += std::norm(amp);
  return std::sqrt(n2);
}

Amplitude inner_product(const SparseState& a, const SparseState& b) {
  // Walk the smaller map, look up in the larger one.
  const SparseState& small = a.size() <= b.size() ? a : b;
  const SparseState& large = a.size() <= b.size() ? b : a;
  Amplitude acc{0.0, 0.0};
  const bool small_is_a = &small == &a;
  for (const auto& [label, amp] : small.entries()) {
    const Amplitude other = large.at(label);
    acc += small_is_a ? std::conj(amp) * other : std::conj(other) * amp;
  }
  return acc;
}

}  // namespace qwalk
