#include <map>
#include <set>

#include "doctest.h"
#include "json.hpp"
#include "qwalk/netlist.hpp"
#include "qwalk/observables.hpp"

using namespace qwalk;

namespace {

WalkConfig config_for(StepVariant variant) {
  WalkConfig config;
  config.variant = variant;
  config.coin = CoinSchedule::uniform(0.5);
  return config;
}

std::map<ElementKind, int> count_kinds(const Netlist& n) {
  std::map<ElementKind, int> counts;
  for (const Element& e : n.elements) ++counts[e.kind];
  return counts;
}

}  // namespace

TEST_CASE("element counts per layout") {
  SUBCASE("t=4 two-coin") {
    const Netlist n = build_netlist(4, config_for(StepVariant::TwoCoin));
    const auto counts = count_kinds(n);
    CHECK(counts.at(ElementKind::Hwp) == 8);
    CHECK(counts.at(ElementKind::Pbs) == 8);
    CHECK(counts.at(ElementKind::Eom) == 4);
    CHECK(counts.at(ElementKind::Detector) == 5);
  }
  SUBCASE("t=1 two-coin") {
    const Netlist n = build_netlist(1, config_for(StepVariant::TwoCoin));
    const auto counts = count_kinds(n);
    CHECK(counts.at(ElementKind::Hwp) == 2);
    CHECK(counts.at(ElementKind::Pbs) == 2);
    CHECK(counts.at(ElementKind::Eom) == 1);
    CHECK(counts.at(ElementKind::Detector) == 2);
    std::set<std::int64_t> positions;
    for (const Element& e : n.elements)
      if (e.kind == ElementKind::Detector) positions.insert(e.position);
    CHECK(positions == std::set<std::int64_t>{-1, 1});
  }
  SUBCASE("count law over t in [1, 50]") {
    for (int t = 1; t <= 50; ++t) {
      for (StepVariant v : {StepVariant::SingleCoin, StepVariant::TwoCoin}) {
        const auto counts = count_kinds(build_netlist(t, config_for(v)));
        const int hwp_per_step = v == StepVariant::TwoCoin ? 2 : 1;
        CHECK(counts.at(ElementKind::Hwp) == hwp_per_step * t);
        CHECK(counts.at(ElementKind::Pbs) == 2 * t);
        CHECK(counts.at(ElementKind::Eom) == t);
        CHECK(counts.at(ElementKind::Detector) == t + 1);
      }
    }
  }
  SUBCASE("t=0 is rejected") {
    CHECK_THROWS_AS(build_netlist(0, config_for(StepVariant::TwoCoin)),
                    std::invalid_argument);
  }
}

TEST_CASE("detector positions follow parity") {
  const Netlist n = build_netlist(3, config_for(StepVariant::SingleCoin));
  std::set<std::int64_t> positions;
  for (const Element& e : n.elements)
    if (e.kind == ElementKind::Detector) positions.insert(e.position);
  CHECK(positions == std::set<std::int64_t>{-3, -1, 1, 3});
}

TEST_CASE("every EOM hangs off a PBS output") {
  const Netlist n = build_netlist(6, config_for(StepVariant::TwoCoin));
  for (const Element& e : n.elements) {
    if (e.kind != ElementKind::Eom) continue;
    int feeders = 0;
    for (const auto& [from, to] : n.edges) {
      if (to != e.id) continue;
      ++feeders;
      CHECK(n.elements[static_cast<std::size_t>(from)].kind ==
            ElementKind::Pbs);
    }
    CHECK(feeders == 1);
  }
}

TEST_CASE("graph is connected from the source to every detector") {
  for (StepVariant v : {StepVariant::SingleCoin, StepVariant::TwoCoin}) {
    const Netlist n = build_netlist(5, config_for(v));
    std::set<int> reachable = {0};
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& [from, to] : n.edges)
        if (reachable.count(from) && !reachable.count(to)) {
          reachable.insert(to);
          grew = true;
        }
    }
    for (const Element& e : n.elements)
      if (e.kind == ElementKind::Detector) CHECK(reachable.count(e.id) == 1);
  }
}

TEST_CASE("detector_frequency_table") {
  const auto t4 = detector_frequency_table(4);
  const std::map<std::int64_t, std::int64_t> expected = {
      {-4, 0}, {-2, 1}, {0, 2}, {2, 3}, {4, 4}};
  CHECK(t4 == expected);

  const auto t1 = detector_frequency_table(1);
  CHECK(t1 == std::map<std::int64_t, std::int64_t>{{-1, 0}, {1, 1}});

  for (int t : {1, 2, 7, 20}) {
    const auto table = detector_frequency_table(t);
    std::int64_t prev = -1;
    for (const auto& [x, f] : table) {
      if (prev >= 0) CHECK(f == prev + 1);
      prev = f;
    }
  }
}

TEST_CASE("detector set equals the simulated support positions") {
  const int t = 9;
  WalkConfig config = config_for(StepVariant::SingleCoin);
  config.steps = t;
  config.coin = CoinSchedule::uniform(0.61);
  const auto states = evolve(config);
  const Distribution d = position_distribution(states.back());

  const Netlist n = build_netlist(t, config);
  std::set<std::int64_t> detector_positions;
  for (const Element& e : n.elements)
    if (e.kind == ElementKind::Detector) detector_positions.insert(e.position);
  for (const auto& [x, p] : d.support)
    CHECK(detector_positions.count(x) == 1);
}

TEST_CASE("emission") {
  const Netlist n = build_netlist(2, config_for(StepVariant::TwoCoin));

  SUBCASE("JSON validates against the schema") {
    const auto doc = nlohmann::json::parse(emit(n, NetlistFormat::Json));
    CHECK(doc.at("steps") == 2);
    CHECK(doc.at("layout") == "two_coin");
    REQUIRE(doc.at("elements").is_array());
    for (const auto& el : doc.at("elements")) {
      CHECK(el.contains("id"));
      CHECK(el.contains("kind"));
      CHECK(el.contains("step"));
      CHECK(el.contains("path"));
      const std::string kind = el.at("kind");
      CHECK((kind == "hwp" || kind == "pbs" || kind == "eom" ||
             kind == "detector"));
      if (kind == "hwp") CHECK(el.contains("theta_rad"));
      if (kind == "eom") CHECK(el.contains("shift_quanta"));
      if (kind == "detector") {
        CHECK(el.contains("position"));
        CHECK(el.contains("frequency"));
      }
    }
    for (const auto& edge : doc.at("edges")) REQUIRE(edge.size() == 2);
  }

  SUBCASE("byte determinism") {
    CHECK(emit(n, NetlistFormat::Json) == emit(n, NetlistFormat::Json));
    CHECK(emit(n, NetlistFormat::Dot) == emit(n, NetlistFormat::Dot));
  }

  SUBCASE("DOT has one node per element and one line per edge") {
    const std::string dot = emit(n, NetlistFormat::Dot);
    std::size_t nodes = 0, arrows = 0, pos = 0;
    while ((pos = dot.find("[label=", pos)) != std::string::npos) {
      ++nodes;
      ++pos;
    }
    pos = 0;
    while ((pos = dot.find(" -> ", pos)) != std::string::npos) {
      ++arrows;
      ++pos;
    }
    CHECK(nodes == n.elements.size());
    CHECK(arrows == n.edges.size());
  }
}
