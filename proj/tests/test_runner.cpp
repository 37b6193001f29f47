#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "qwalk/runner.hpp"

using namespace qwalk;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "qwalk_tests" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("parse_config fills defaults for a minimal document") {
  const RunSpec spec =
      parse_config(R"({"steps": 20, "delta_deg": 0, "theta_deg": [45]})");
  CHECK(spec.steps == 20);
  CHECK(spec.delta_deg == 0.0);
  CHECK(spec.eta_deg == 0.0);
  CHECK(spec.theta_deg == std::vector<double>{45.0});
  CHECK(spec.variant == "single_coin");
  CHECK(spec.prune_eps == 1e-14);
  CHECK(spec.theta_mode == RunSpec::ThetaMode::Sweep);
}

TEST_CASE("parse_config rejects bad input by key name") {
  SUBCASE("negative steps") {
    try {
      parse_config(R"({"steps": -1})");
      FAIL("expected rejection");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("steps") != std::string::npos);
    }
  }
  SUBCASE("unknown key") {
    try {
      parse_config(R"({"stepz": 20})");
      FAIL("expected rejection");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()) == "unknown key: stepz");
    }
  }
  SUBCASE("wrong type names key and expectation") {
    try {
      parse_config(R"({"steps": "twenty"})");
      FAIL("expected rejection");
    } catch (const ConfigError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("steps") != std::string::npos);
      CHECK(msg.find("integer") != std::string::npos);
    }
  }
  SUBCASE("unknown output") {
    CHECK_THROWS_AS(parse_config(R"({"steps": 1, "outputs": ["positionz"]})"),
                    ConfigError);
  }
  SUBCASE("short per-step schedule") {
    CHECK_THROWS_AS(
        parse_config(
            R"({"steps": 5, "theta_deg": [45, 45], "theta_mode": "per_step"})"),
        ConfigError);
  }
}

TEST_CASE("steps=0 run emits initial-state rows and zero negativity") {
  const auto dir = scratch_dir("steps0");
  RunSpec spec = parse_config(
      R"({"steps": 0, "delta_deg": 0, "theta_deg": [45],
          "outputs": ["positions", "negativity_pf"]})");
  spec.out_dir = dir.string();
  REQUIRE(run(spec) == kExitOk);

  const std::string positions = read_file(dir / "theta_45" / "positions.csv");
  CHECK(positions ==
        "theta_deg,step,x,probability\n45,0,0,1\n");
  const std::string neg = read_file(dir / "theta_45" / "negativity_pf.csv");
  std::istringstream lines(neg);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(row.substr(0, 6) == "45,0,0");
}

TEST_CASE("identical specs produce byte-identical trees") {
  const auto dir_a = scratch_dir("repro_a");
  const auto dir_b = scratch_dir("repro_b");
  RunSpec spec = parse_config(
      R"({"steps": 6, "delta_deg": 30, "theta_deg": [30, 60],
          "variant": "two_coin",
          "outputs": ["positions", "frequencies", "joint",
                      "negativity_fpos", "schmidt", "netlist"]})");
  spec.out_dir = dir_a.string();
  REQUIRE(run(spec) == kExitOk);
  spec.out_dir = dir_b.string();
  REQUIRE(run(spec) == kExitOk);

  for (const auto& entry :
       std::filesystem::recursive_directory_iterator(dir_a)) {
    if (!entry.is_regular_file()) continue;
    const auto rel = std::filesystem::relative(entry.path(), dir_a);
    CHECK(read_file(entry.path()) == read_file(dir_b / rel));
  }
}

TEST_CASE("manifest lists every file with its hash") {
  const auto dir = scratch_dir("manifest");
  RunSpec spec = parse_config(
      R"({"steps": 3, "theta_deg": [15, 75],
          "outputs": ["positions", "frequencies"]})");
  spec.out_dir = dir.string();
  REQUIRE(run(spec) == kExitOk);

  const auto manifest = nlohmann::json::parse(read_file(dir / "manifest.json"));
  CHECK(manifest.at("spec_hash").get<std::string>().size() == 64);
  std::size_t files_on_disk = 0;
  for (const auto& entry :
       std::filesystem::recursive_directory_iterator(dir))
    if (entry.is_regular_file() &&
        entry.path().filename() != "manifest.json")
      ++files_on_disk;
  CHECK(manifest.at("files").size() == files_on_disk);
}

TEST_CASE("corruption hook trips the invariant gate") {
  const auto dir = scratch_dir("corrupt");
  RunSpec spec = parse_config(R"({"steps": 4, "theta_deg": [45]})");
  spec.out_dir = dir.string();
  spec.corrupt_at_step = 2;
  CHECK(run(spec) == kExitInvariant);
}

TEST_CASE("parallel jobs produce the same tree as serial") {
  const auto dir_serial = scratch_dir("jobs1");
  const auto dir_parallel = scratch_dir("jobs4");
  RunSpec spec = parse_config(
      R"({"steps": 5, "theta_deg": [15, 30, 45, 60],
          "outputs": ["positions", "frequencies"]})");
  spec.out_dir = dir_serial.string();
  spec.jobs = 1;
  REQUIRE(run(spec) == kExitOk);
  spec.out_dir = dir_parallel.string();
  spec.jobs = 4;
  REQUIRE(run(spec) == kExitOk);
  for (const auto& entry :
       std::filesystem::recursive_directory_iterator(dir_serial)) {
    if (!entry.is_regular_file()) continue;
    const auto rel = std::filesystem::relative(entry.path(), dir_serial);
    CHECK(read_file(entry.path()) == read_file(dir_parallel / rel));
  }
}
