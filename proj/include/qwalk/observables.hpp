#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "qwalk/state.hpp"

namespace qwalk {

// Marginal probability distribution over one integer index. Only nonzero
// bins are stored; [min_index, max_index] records the structural range so
// serializers can emit explicit zero rows.
struct Distribution {
  std::map<std::int64_t, double> support;
  std::int64_t min_index{0};
  std::int64_t max_index{0};
  double total{0.0};

  double at(std::int64_t i) const {
    auto it = support.find(i);
    return it == support.end() ? 0.0 : it->second;
  }
};

// P(x) = sum over pol, f of |amplitude|^2.
Distribution position_distribution(const SparseState& state);

// P(f) = sum over pol, x of |amplitude|^2.
Distribution frequency_distribution(const SparseState& state);

// P(x, f) = sum over pol of |amplitude|^2; nonzero cells only.
std::map<std::pair<std::int64_t, std::int64_t>, double> joint_distribution(
    const SparseState& state);

// Result of checking the position<->frequency correspondence: either every
// occupied position carries exactly one frequency (the bijection is
// returned) or the violating positions are listed.
struct TaggingResult {
  std::map<std::int64_t, std::int64_t> position_to_frequency;
  std::vector<std::int64_t> violations;

  bool ok() const { return violations.empty(); }
};

// Probability below this counts as a structural zero when building the
// tagging map.
constexpr double kTaggingProbabilityEps = 1e-12;

TaggingResult tagging_map(const SparseState& state, int t);

}  // namespace qwalk
