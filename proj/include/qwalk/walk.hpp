#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qwalk/state.hpp"

namespace qwalk {

// Coin angle schedule: one fixed angle, one angle per step, or one angle per
// incoming position (with a default for unlisted positions).
class CoinSchedule {
 public:
  enum class Mode { Uniform, PerStep, PerPosition };

  static CoinSchedule uniform(double theta) {
    CoinSchedule s;
    s.mode_ = Mode::Uniform;
    s.theta_ = theta;
    return s;
  }

  static CoinSchedule per_step(std::vector<double> thetas) {
    CoinSchedule s;
    s.mode_ = Mode::PerStep;
    s.per_step_ = std::move(thetas);
    return s;
  }

  static CoinSchedule per_position(std::map<std::int64_t, double> thetas,
                                   double default_theta) {
    CoinSchedule s;
    s.mode_ = Mode::PerPosition;
    s.per_position_ = std::move(thetas);
    s.theta_ = default_theta;
    return s;
  }

  Mode mode() const { return mode_; }

  // Angle for step `step_index` (0-based) at incoming position `x`.
  // Throws on per-step schedule exhaustion.
  double at(int step_index, std::int64_t x) const {
    switch (mode_) {
      case Mode::Uniform:
        return theta_;
      case Mode::PerStep:
        if (step_index < 0 ||
            static_cast<std::size_t>(step_index) >= per_step_.size())
          throw std::invalid_argument(
              "CoinSchedule: per-step schedule exhausted at step " +
              std::to_string(step_index));
        return per_step_[static_cast<std::size_t>(step_index)];
      case Mode::PerPosition: {
        auto it = per_position_.find(x);
        return it == per_position_.end() ? theta_ : it->second;
      }
    }
    throw std::logic_error("CoinSchedule: unreachable");
  }

  std::size_t per_step_length() const { return per_step_.size(); }

 private:
  Mode mode_{Mode::Uniform};
  double theta_{0.0};
  std::vector<double> per_step_;
  std::map<std::int64_t, double> per_position_;
};

// SingleCoin is one coin per step (W = S_f S_P (C (x) I (x) I)); TwoCoin
// inserts a second coin between the position and frequency shifts, matching
// a two-half-wave-plate unit cell.
enum class StepVariant { SingleCoin, TwoCoin };

// Polarization-controlled walk over position and frequency, or the plain
// one-dimensional coin walk (frequency untouched, opposite shift
// convention).
enum class WalkMode { PolarizationControlled, Baseline };

struct WalkConfig {
  int steps{0};
  double delta{0.0};
  double eta{0.0};
  CoinSchedule coin = CoinSchedule::uniform(0.0);
  StepVariant variant{StepVariant::SingleCoin};
  // Second coin for TwoCoin; defaults to the first schedule when unset.
  std::optional<CoinSchedule> coin2;
  WalkMode mode{WalkMode::PolarizationControlled};
  double prune_eps{SparseState::kDefaultPruneEps};
};

// Position-keyed coin rotation: |H> -> cos|H> + sin|V>,
// |V> -> -sin|H> + cos|V>, with theta = theta_at(x).
SparseState apply_coin(const SparseState& state,
                       const std::function<double(std::int64_t)>& theta_at);

// (H,x,f) -> (H,x+1,f); (V,x,f) -> (V,x-1,f).
SparseState apply_position_shift(const SparseState& state);

// (H,x,f) -> (H,x,f+1); V untouched.
SparseState apply_frequency_shift(const SparseState& state);

// Plain-walk shift with the opposite convention: (H,x,f) -> (H,x-1,f);
// (V,x,f) -> (V,x+1,f). Frequency untouched.
SparseState apply_baseline_shift(const SparseState& state);

// One full step of the configured walk, pruned at config.prune_eps.
SparseState step(const SparseState& state, int step_index,
                 const WalkConfig& config);

// Initial state for `config` (photon form for the polarization-controlled
// walk, coin form for the baseline walk).
SparseState initial_state(const WalkConfig& config);

// All intermediate states, element k being the k-step state
// (length config.steps + 1).
std::vector<SparseState> evolve(const WalkConfig& config);

}  // namespace qwalk
