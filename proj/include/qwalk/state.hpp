#pragma once

#include <cmath>
#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>

namespace qwalk {

// Polarization doubles as the walk's coin space; H is row/column 0 in every
// matrix convention used by this library, V is 1.
enum class Polarization : int { H = 0, V = 1 };

using Amplitude = std::complex<double>;

// One tripartite basis ket |pol> |x> |f>. The frequency lattice is
// half-infinite: f counts EOM shift quanta above the input frequency and is
// never negative.
struct BasisLabel {
  Polarization pol{Polarization::H};
  std::int64_t x{0};
  std::int64_t f{0};

  friend auto operator<=>(const BasisLabel&, const BasisLabel&) = default;
};

// Sparse pure state on H_pol (x) H_pos (x) H_freq, stored as an ordered map
// from basis label to complex amplitude. Ordered storage keeps iteration
// (and hence all downstream output) deterministic.
class SparseState {
 public:
  static constexpr double kDefaultPruneEps = 1e-14;

  using Map = std::map<BasisLabel, Amplitude>;

  explicit SparseState(double prune_eps = kDefaultPruneEps)
      : prune_eps_(prune_eps) {
    if (prune_eps < 0.0)
      throw std::invalid_argument("SparseState: prune_eps must be >= 0");
  }

  const Map& entries() const { return entries_; }
  double prune_eps() const { return prune_eps_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Overwrites the amplitude at `label`. Rejects negative frequency indices
  // and non-finite amplitudes.
  void set(const BasisLabel& label, Amplitude a) {
    validate(label, a);
    if (std::abs(a) < prune_eps_)
      entries_.erase(label);
    else
      entries_[label] = a;
  }

  // Accumulates into the amplitude at `label`.
  void add(const BasisLabel& label, Amplitude a) {
    validate(label, a);
    auto [it, inserted] = entries_.try_emplace(label, a);
    if (!inserted) it->second += a;
  }

  Amplitude at(const BasisLabel& label) const {
    auto it = entries_.find(label);
    return it == entries_.end() ? Amplitude{0.0, 0.0} : it->second;
  }

  // Drops every entry with |amplitude| < prune_eps.
  void prune() {
    for (auto it = entries_.begin(); it != entries_.end();) {
      if (std::abs(it->second) < prune_eps_)
        it = entries_.erase(it);
      else
        ++it;
    }
  }

 private:
  static void validate(const BasisLabel& label, Amplitude a) {
    if (label.f < 0)
      throw std::invalid_argument("SparseState: negative frequency index");
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw std::invalid_argument("SparseState: non-finite amplitude");
  }

  Map entries_;
  double prune_eps_;
};

// |label> with amplitude 1.
SparseState basis_state(const BasisLabel& label);

// cos(delta)|H> + e^{-i eta} sin(delta)|V>, localized at position x0,
// frequency 0.
SparseState initial_coin_state(double delta, double eta, std::int64_t x0 = 0);

// cos(delta)|H> - sin(delta)|V>, localized at the origin of both lattices.
SparseState initial_photon_state(double delta);

double norm(const SparseState& s);

// <a|b> over the shared support.
Amplitude inner_product(const SparseState& a, const SparseState& b);

}  // namespace qwalk
