#include "qwalk/observables.hpp"

#include <algorithm>

namespace qwalk {

namespace {

Distribution finalize(std::map<std::int64_t, double> bins) {
  Distribution d;
  d.support = std::move(bins);
  if (!d.support.empty()) {
    d.min_index = d.support.begin()->first;
    d.max_index = d.support.rbegin()->first;
  }
  for (const auto& [i, p] : d.support) d.total += p;
  return d;
}

}  // namespace

Distribution position_distribution(const SparseState& state) {
  std::map<std::int64_t, double> bins;
  for (const auto& [label, amp] : state.entries())
    bins[label.x] += std::norm(amp);
  return finalize(std::move(bins));
}

Distribution frequency_distribution(const SparseState& state) {
  std::map<std::int64_t, double> bins;
  for (const auto& [label, amp] : state.entries())
    bins[label.f] += std::norm(amp);
  return finalize(std::move(bins));
}

std::map<std::pair<std::int64_t, std::int64_t>, double> joint_distribution(
    const SparseState& state) {
  std::map<std::pair<std::int64_t, std::int64_t>, double> joint;
  for (const auto& [label, amp] : state.entries())
    joint[{label.x, label.f}] += std::norm(amp);
  return joint;
}

TaggingResult tagging_map(const SparseState& state, int /*t*/) {
  const auto joint = joint_distribution(state);

  std::map<std::int64_t, std::vector<std::int64_t>> freqs_at;
  for (const auto& [xf, p] : joint)
    if (p > kTaggingProbabilityEps) freqs_at[xf.first].push_back(xf.second);

  TaggingResult result;
  for (const auto& [x, fs] : freqs_at) {
    if (fs.size() == 1)
      result.position_to_frequency[x] = fs.front();
    else
      result.violations.push_back(x);
  }
  if (!result.violations.empty()) result.position_to_frequency.clear();
  return result;
}

}  // namespace qwalk
