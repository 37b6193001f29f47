#include "qwalk/runner.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "json.hpp"

#include "qwalk/entanglement.hpp"
#include "qwalk/netlist.hpp"
#include "qwalk/observables.hpp"
#include "qwalk/sha256.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

namespace {

const std::set<std::string> kKnownOutputs = {
    "positions",       "frequencies",      "joint",
    "negativity_pf",   "negativity_fpos",  "negativity_ppos",
    "schmidt",         "netlist"};

// Locale-independent fixed formatting; 17 significant digits round-trip a
// double exactly.
std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

template <typename T>
T expect(const nlohmann::json& doc, const std::string& key,
         const char* type_name) {
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("config key \"" + key + "\": expected " + type_name);
  }
}

struct JobResult {
  int code{kExitOk};
  std::string error;
  // (path relative to out_dir, sha256 of contents)
  std::vector<std::pair<std::string, std::string>> files;
};

struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string positions_csv(const std::vector<SparseState>& states,
                          const std::string& theta_label, int t) {
  std::string csv = "theta_deg,step,x,probability\n";
  for (std::size_t k = 0; k < states.size(); ++k) {
    const Distribution d = position_distribution(states[k]);
    for (std::int64_t x = -t; x <= t; ++x)
      csv += theta_label + "," + std::to_string(k) + "," + std::to_string(x) +
             "," + fmt17(d.at(x)) + "\n";
  }
  return csv;
}

std::string frequencies_csv(const std::vector<SparseState>& states,
                            const std::string& theta_label, int t) {
  std::string csv = "theta_deg,step,f,probability\n";
  for (std::size_t k = 0; k < states.size(); ++k) {
    const Distribution d = frequency_distribution(states[k]);
    for (std::int64_t f = 0; f <= t; ++f)
      csv += theta_label + "," + std::to_string(k) + "," + std::to_string(f) +
             "," + fmt17(d.at(f)) + "\n";
  }
  return csv;
}

std::string joint_csv(const std::vector<SparseState>& states,
                      const std::string& theta_label) {
  std::string csv = "theta_deg,step,x,f,probability\n";
  for (std::size_t k = 0; k < states.size(); ++k)
    for (const auto& [xf, p] : joint_distribution(states[k]))
      csv += theta_label + "," + std::to_string(k) + "," +
             std::to_string(xf.first) + "," + std::to_string(xf.second) +
             "," + fmt17(p) + "\n";
  return csv;
}

std::string negativity_csv(const std::vector<SparseState>& states,
                           const std::string& theta_label, Subsystem part_a,
                           Subsystem part_b) {
  std::string csv = "theta_deg,step,raw,normalized,dim_a,dim_b\n";
  for (std::size_t k = 0; k < states.size(); ++k) {
    const NegativityReport r = negativity(states[k], part_a, part_b);
    const double bound = (std::min(r.dim_a, r.dim_b) - 1) / 2.0;
    if (r.raw < -1e-9 || r.raw > bound + 1e-9)
      throw InvariantError("negativity out of bounds at step " +
                           std::to_string(k));
    csv += theta_label + "," + std::to_string(k) + "," + fmt17(r.raw) + "," +
           fmt17(r.normalized) + "," + std::to_string(r.dim_a) + "," +
           std::to_string(r.dim_b) + "\n";
  }
  return csv;
}

std::string schmidt_csv(const std::vector<SparseState>& states,
                        const std::string& theta_label) {
  std::string csv = "theta_deg,step,r_pol,r_pos,r_freq\n";
  for (std::size_t k = 0; k < states.size(); ++k) {
    const SchmidtRankVector r = schmidt_rank_vector(states[k]);
    csv += theta_label + "," + std::to_string(k) + "," +
           std::to_string(r.r_pol) + "," + std::to_string(r.r_pos) + "," +
           std::to_string(r.r_freq) + "\n";
  }
  return csv;
}

JobResult run_job(const RunSpec& spec, const std::string& job_dir,
                  const std::string& theta_label, const CoinSchedule& coin) {
  JobResult result;

  WalkConfig config;
  config.steps = spec.steps;
  config.delta = spec.delta_deg * std::numbers::pi / 180.0;
  config.eta = spec.eta_deg * std::numbers::pi / 180.0;
  config.coin = coin;
  config.variant = spec.variant == "two_coin" ? StepVariant::TwoCoin
                                              : StepVariant::SingleCoin;
  config.prune_eps = spec.prune_eps;

  try {
    std::vector<SparseState> states = evolve(config);

    if (spec.corrupt_at_step >= 0 &&
        spec.corrupt_at_step < static_cast<int>(states.size())) {
      SparseState& victim = states[static_cast<std::size_t>(spec.corrupt_at_step)];
      SparseState corrupted(victim.prune_eps());
      for (const auto& [label, amp] : victim.entries())
        corrupted.set(label, 1.5 * amp);
      victim = corrupted;
    }

    for (std::size_t k = 0; k < states.size(); ++k)
      if (std::abs(norm(states[k]) - 1.0) > 1e-9)
        throw InvariantError("norm drift at step " + std::to_string(k));

    std::vector<std::pair<std::string, std::string>> products;
    if (spec.outputs.count("positions"))
      products.emplace_back("positions.csv",
                            positions_csv(states, theta_label, spec.steps));
    if (spec.outputs.count("frequencies"))
      products.emplace_back("frequencies.csv",
                            frequencies_csv(states, theta_label, spec.steps));
    if (spec.outputs.count("joint"))
      products.emplace_back("joint.csv", joint_csv(states, theta_label));
    if (spec.outputs.count("negativity_pf"))
      products.emplace_back(
          "negativity_pf.csv",
          negativity_csv(states, theta_label, Subsystem::Pol,
                         Subsystem::Freq));
    if (spec.outputs.count("negativity_fpos"))
      products.emplace_back(
          "negativity_fpos.csv",
          negativity_csv(states, theta_label, Subsystem::Freq,
                         Subsystem::Pos));
    if (spec.outputs.count("negativity_ppos"))
      products.emplace_back(
          "negativity_ppos.csv",
          negativity_csv(states, theta_label, Subsystem::Pol,
                         Subsystem::Pos));
    if (spec.outputs.count("schmidt"))
      products.emplace_back("schmidt.csv", schmidt_csv(states, theta_label));
    if (spec.outputs.count("netlist") && spec.steps >= 1)
      products.emplace_back(
          "netlist.json",
          emit(build_netlist(spec.steps, config), NetlistFormat::Json));

    const std::filesystem::path dir =
        std::filesystem::path(spec.out_dir) / job_dir;
    std::filesystem::create_directories(dir);
    for (const auto& [name, contents] : products) {
      std::ofstream out(dir / name, std::ios::binary);
      out << contents;
      if (!out) {
        result.code = kExitIo;
        result.error = "failed to write " + (dir / name).string();
        return result;
      }
      result.files.emplace_back(job_dir + "/" + name, sha256_hex(contents));
    }
  } catch (const InvariantError& e) {
    result.code = kExitInvariant;
    result.error = e.what();
  } catch (const std::filesystem::filesystem_error& e) {
    result.code = kExitIo;
    result.error = e.what();
  } catch (const std::exception& e) {
    result.code = kExitInvariant;
    result.error = e.what();
  }
  return result;
}

nlohmann::ordered_json canonical_spec(const RunSpec& spec) {
  nlohmann::ordered_json doc;
  doc["steps"] = spec.steps;
  doc["delta_deg"] = spec.delta_deg;
  doc["eta_deg"] = spec.eta_deg;
  doc["theta_deg"] = spec.theta_deg;
  doc["theta_mode"] =
      spec.theta_mode == RunSpec::ThetaMode::Sweep ? "sweep" : "per_step";
  doc["variant"] = spec.variant;
  doc["outputs"] = spec.outputs;
  doc["prune_eps"] = spec.prune_eps;
  return doc;
}

}  // namespace

RunSpec parse_config(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  static const std::set<std::string> kKnownKeys = {
      "steps",    "delta_deg", "eta_deg",  "theta_deg", "theta_mode",
      "variant",  "outputs",   "out_dir",  "prune_eps", "jobs"};
  for (const auto& [key, value] : doc.items())
    if (!kKnownKeys.count(key)) throw ConfigError("unknown key: " + key);

  RunSpec spec;
  if (!doc.contains("steps")) throw ConfigError("missing key: steps");
  spec.steps = expect<int>(doc, "steps", "non-negative integer");
  if (spec.steps < 0)
    throw ConfigError("config key \"steps\": must be >= 0");

  if (doc.contains("delta_deg"))
    spec.delta_deg = expect<double>(doc, "delta_deg", "number");
  if (doc.contains("eta_deg"))
    spec.eta_deg = expect<double>(doc, "eta_deg", "number");
  if (doc.contains("theta_deg")) {
    spec.theta_deg =
        expect<std::vector<double>>(doc, "theta_deg", "array of numbers");
    if (spec.theta_deg.empty())
      throw ConfigError("config key \"theta_deg\": must be non-empty");
  }
  if (doc.contains("theta_mode")) {
    const auto mode = expect<std::string>(doc, "theta_mode", "string");
    if (mode == "sweep")
      spec.theta_mode = RunSpec::ThetaMode::Sweep;
    else if (mode == "per_step")
      spec.theta_mode = RunSpec::ThetaMode::PerStep;
    else
      throw ConfigError(
          "config key \"theta_mode\": expected \"sweep\" or \"per_step\"");
  }
  if (doc.contains("variant")) {
    spec.variant = expect<std::string>(doc, "variant", "string");
    if (spec.variant != "single_coin" && spec.variant != "two_coin")
      throw ConfigError(
          "config key \"variant\": expected \"single_coin\" or \"two_coin\"");
  }
  if (doc.contains("outputs")) {
    const auto outputs =
        expect<std::vector<std::string>>(doc, "outputs", "array of strings");
    spec.outputs.clear();
    for (const std::string& o : outputs) {
      if (!kKnownOutputs.count(o))
        throw ConfigError("config key \"outputs\": unknown output \"" + o +
                          "\"");
      spec.outputs.insert(o);
    }
  }
  if (doc.contains("out_dir"))
    spec.out_dir = expect<std::string>(doc, "out_dir", "string");
  if (doc.contains("prune_eps")) {
    spec.prune_eps = expect<double>(doc, "prune_eps", "number");
    if (spec.prune_eps < 0.0)
      throw ConfigError("config key \"prune_eps\": must be >= 0");
  }
  if (doc.contains("jobs")) {
    spec.jobs = expect<int>(doc, "jobs", "positive integer");
    if (spec.jobs < 1) throw ConfigError("config key \"jobs\": must be >= 1");
  }

  if (spec.theta_mode == RunSpec::ThetaMode::PerStep &&
      spec.theta_deg.size() < static_cast<std::size_t>(spec.steps))
    throw ConfigError(
        "config key \"theta_deg\": per-step schedule shorter than steps");

  return spec;
}

int run(const RunSpec& spec) {
  constexpr double kDegToRad = std::numbers::pi / 180.0;

  // One job per theta in sweep mode; per-step mode is a single job using
  // the whole list as the schedule.
  struct Job {
    std::string dir;
    std::string theta_label;
    CoinSchedule coin;
  };
  std::vector<Job> jobs;
  if (spec.theta_mode == RunSpec::ThetaMode::PerStep) {
    std::vector<double> schedule;
    schedule.reserve(spec.theta_deg.size());
    for (double deg : spec.theta_deg) schedule.push_back(deg * kDegToRad);
    jobs.push_back({"theta_schedule", "per_step",
                    CoinSchedule::per_step(std::move(schedule))});
  } else {
    for (double deg : spec.theta_deg)
      jobs.push_back({"theta_" + fmt_short(deg), fmt_short(deg),
                      CoinSchedule::uniform(deg * kDegToRad)});
  }

  std::vector<JobResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < jobs.size();
         i = next.fetch_add(1))
      results[i] =
          run_job(spec, jobs[i].dir, jobs[i].theta_label, jobs[i].coin);
  };

  const std::size_t nthreads =
      std::min<std::size_t>(static_cast<std::size_t>(spec.jobs), jobs.size());
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  int code = kExitOk;
  for (const JobResult& r : results) {
    if (r.code != kExitOk) {
      std::fprintf(stderr, "error: %s\n", r.error.c_str());
      code = std::max(code, r.code);
    }
  }
  if (code != kExitOk) return code;

  // Manifest is written once, after every job has finished.
  nlohmann::ordered_json manifest;
  manifest["spec_hash"] = sha256_hex(canonical_spec(spec).dump());
  manifest["files"] = nlohmann::ordered_json::array();
  for (const JobResult& r : results)
    for (const auto& [name, hash] : r.files) {
      nlohmann::ordered_json entry;
      entry["name"] = name;
      entry["sha256"] = hash;
      manifest["files"].push_back(entry);
    }

  try {
    std::filesystem::create_directories(spec.out_dir);
    std::ofstream out(std::filesystem::path(spec.out_dir) / "manifest.json",
                      std::ios::binary);
    out << manifest.dump(2) << "\n";
    if (!out) return kExitIo;
  } catch (const std::filesystem::filesystem_error&) {
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace qwalk
