#include "qwalk/walk.hpp"

namespace qwalk {

SparseState apply_coin(const SparseState& state,
                       const std::function<double(std::int64_t)>& theta_at) {
  SparseState out(state.prune_eps());
  for (const auto& [label, amp] : state.entries()) {
    const double theta = theta_at(label.x);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    if (label.pol == Polarization::H) {
      out.add({Polarization::H, label.x, label.f}, c * amp);
      out.add({Polarization::V, label.x, label.f}, s * amp);
    } else {
      out.add({Polarization::H, label.x, label.f}, -s * amp);
      out.add({Polarization::V, label.x, label.f}, c * amp);
    }
  }
  return out;
}

SparseState apply_position_shift(const SparseState& state) {
  SparseState out(state.prune_eps());
  for (const auto& [label, amp] : state.entries()) {
    const std::int64_t x =
        label.pol == Polarization::H ? label.x + 1 : label.x - 1;
    out.add({label.pol, x, label.f}, amp);
  }
  return out;
}

SparseState apply_frequency_shift(const SparseState& state) {
  SparseState out(state.prune_eps());
  for (const auto& [label, amp] : state.entries()) {
    const std::int64_t f =
        label.pol == Polarization::H ? label.f + 1 : label.f;
    out.add({label.pol, label.x, f}, amp);
  }
  return out;
}

SparseState apply_baseline_shift(const SparseState& state) {
  SparseState out(state.prune_eps());
  for (const auto& [label, amp] : state.entries()) {
    const std::int64_t x =
        label.pol == Polarization::H ? label.x - 1 : label.x + 1;
    out.add({label.pol, x, label.f}, amp);
  }
  return out;
}

SparseState step(const SparseState& state, int step_index,
                 const WalkConfig& config) {
  const auto theta1 = [&](std::int64_t x) {
    return config.coin.at(step_index, x);
  };

  SparseState out = apply_coin(state, theta1);

  if (config.mode == WalkMode::Baseline) {
    out = apply_baseline_shift(out);
  } else {
    out = apply_position_shift(out);
    if (config.variant == StepVariant::TwoCoin) {
      const CoinSchedule& second =
          config.coin2 ? *config.coin2 : config.coin;
      out = apply_coin(
          out, [&](std::int64_t x) { return second.at(step_index, x); });
    }
    out = apply_frequency_shift(out);
  }

  out.prune();
  return out;
}

SparseState initial_state(const WalkConfig& config) {
  SparseState init = config.mode == WalkMode::Baseline
                         ? initial_coin_state(config.delta, config.eta)
                         : initial_photon_state(config.delta);
  SparseState out(config.prune_eps);
  for (const auto& [label, amp] : init.entries()) out.set(label, amp);
  return out;
}

std::vector<SparseState> evolve(const WalkConfig& config) {
  if (config.steps < 0)
    throw std::invalid_argument("evolve: steps must be >= 0");
  if (config.coin.mode() == CoinSchedule::Mode::PerStep &&
      config.coin.per_step_length() < static_cast<std::size_t>(config.steps))
    throw std::invalid_argument(
        "evolve: per-step coin schedule shorter than requested steps");

  std::vector<SparseState> states;
  states.reserve(static_cast<std::size_t>(config.steps) + 1);
  states.push_back(initial_state(config));
  for (int k = 0; k < config.steps; ++k)
    states.push_back(step(states.back(), k, config));
  return states;
}

}  // namespace qwalk
