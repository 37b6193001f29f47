#include "qwalk/netlist.hpp"

#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qwalk {

namespace {

const char* kind_name(ElementKind kind) {
  switch (kind) {
    case ElementKind::Hwp:
      return "hwp";
    case ElementKind::Pbs:
      return "pbs";
    case ElementKind::Eom:
      return "eom";
    case ElementKind::Detector:
      return "detector";
  }
  throw std::logic_error("kind_name: unreachable");
}

}  // namespace

Netlist build_netlist(int t, const WalkConfig& config) {
  if (t < 1)
    throw std::invalid_argument("build_netlist: need at least one step");

  Netlist netlist;
  netlist.steps = t;
  netlist.layout = config.variant;

  const auto add = [&](ElementKind kind, int step, int path) -> int {
    Element e;
    e.id = static_cast<int>(netlist.elements.size());
    e.kind = kind;
    e.step = step;
    e.path = path;
    netlist.elements.push_back(e);
    return e.id;
  };
  const auto connect = [&](int from, int to) {
    netlist.edges.emplace_back(from, to);
  };

  // Each step is one unit cell on the trunk (path 0); the EOM sits on the
  // H arm (path +1) split off by the cell's last PBS.
  std::vector<int> prev_outputs;
  for (int s = 1; s <= t; ++s) {
    const int hwp1 = add(ElementKind::Hwp, s, 0);
    netlist.elements[static_cast<std::size_t>(hwp1)].theta =
        config.coin.at(s - 1, 0);
    for (int out : prev_outputs) connect(out, hwp1);

    const int pbs1 = add(ElementKind::Pbs, s, 0);
    connect(hwp1, pbs1);

    int last_pbs;
    if (config.variant == StepVariant::TwoCoin) {
      const int hwp2 = add(ElementKind::Hwp, s, 0);
      const CoinSchedule& second = config.coin2 ? *config.coin2 : config.coin;
      netlist.elements[static_cast<std::size_t>(hwp2)].theta =
          second.at(s - 1, 0);
      connect(pbs1, hwp2);
      last_pbs = add(ElementKind::Pbs, s, 0);
      connect(hwp2, last_pbs);
    } else {
      last_pbs = add(ElementKind::Pbs, s, 0);
      connect(pbs1, last_pbs);
    }

    const int eom = add(ElementKind::Eom, s, 1);
    connect(last_pbs, eom);  // H output of the PBS; V passes straight on

    prev_outputs = {eom, last_pbs};
  }

  for (std::int64_t x = -t; x <= t; x += 2) {
    Element det;
    det.id = static_cast<int>(netlist.elements.size());
    det.kind = ElementKind::Detector;
    det.step = t;
    det.path = static_cast<int>(x);
    det.position = x;
    det.frequency = (x + t) / 2;
    netlist.elements.push_back(det);
    for (int out : prev_outputs) connect(out, det.id);
  }

  return netlist;
}

std::map<std::int64_t, std::int64_t> detector_frequency_table(int t) {
  if (t < 1)
    throw std::invalid_argument(
        "detector_frequency_table: need at least one step");
  std::map<std::int64_t, std::int64_t> table;
  for (std::int64_t x = -t; x <= t; x += 2) table[x] = (x + t) / 2;
  return table;
}

std::string emit(const Netlist& netlist, NetlistFormat format) {
  if (format == NetlistFormat::Json) {
    nlohmann::ordered_json doc;
    doc["steps"] = netlist.steps;
    doc["layout"] = netlist.layout == StepVariant::SingleCoin ? "single_coin"
                                                              : "two_coin";
    doc["elements"] = nlohmann::ordered_json::array();
    for (const Element& e : netlist.elements) {
      nlohmann::ordered_json el;
      el["id"] = e.id;
      el["kind"] = kind_name(e.kind);
      if (e.kind == ElementKind::Hwp) el["theta_rad"] = e.theta;
      if (e.kind == ElementKind::Eom) el["shift_quanta"] = e.shift_quanta;
      if (e.kind == ElementKind::Detector) {
        el["position"] = e.position;
        el["frequency"] = e.frequency;
      }
      el["step"] = e.step;
      el["path"] = e.path;
      doc["elements"].push_back(el);
    }
    doc["edges"] = nlohmann::ordered_json::array();
    for (const auto& [from, to] : netlist.edges)
      doc["edges"].push_back({from, to});
    return doc.dump(2) + "\n";
  }

  std::ostringstream dot;
  dot << "digraph netlist {\n";
  for (const Element& e : netlist.elements)
    dot << "  n" << e.id << " [label=\"" << kind_name(e.kind) << "@s"
        << e.step << "p" << e.path << "\"];\n";
  for (const auto& [from, to] : netlist.edges)
    dot << "  n" << from << " -> n" << to << ";\n";
  dot << "}\n";
  return dot.str();
}

}  // namespace qwalk
