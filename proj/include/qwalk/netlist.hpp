#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/walk.hpp"

namespace qwalk {

enum class ElementKind { Hwp, Pbs, Eom, Detector };

struct Element {
  int id{0};
  ElementKind kind{ElementKind::Hwp};
  int step{0};        // 1-based step the element belongs to; detectors use t
  int path{0};        // lattice path label within the layer
  double theta{0.0};  // HWP only
  int shift_quanta{1};           // EOM only
  std::int64_t position{0};      // detector only
  std::int64_t frequency{0};     // detector only
};

struct Netlist {
  int steps{0};
  StepVariant layout{StepVariant::SingleCoin};
  std::vector<Element> elements;
  std::vector<std::pair<int, int>> edges;  // element id -> element id
};

// Optical schematic for a t-step walk: per step one HWP (SingleCoin) or two
// HWPs (TwoCoin), two PBS, one EOM on the H output of the last PBS, plus
// t+1 detectors at positions {-t, -t+2, ..., t}.
Netlist build_netlist(int t, const WalkConfig& config);

// Detector position -> captured frequency index, f = (x + t) / 2.
std::map<std::int64_t, std::int64_t> detector_frequency_table(int t);

enum class NetlistFormat { Json, Dot };

// Deterministic serialization; identical netlists yield identical bytes.
std::string emit(const Netlist& netlist, NetlistFormat format);

}  // namespace qwalk
