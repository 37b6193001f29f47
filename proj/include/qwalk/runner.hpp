#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qwalk {

// Raised by parse_config; the message names the offending key.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One experiment: a theta sweep (or one per-step schedule) over a fixed
// walk geometry, with a chosen set of output products.
struct RunSpec {
  enum class ThetaMode { Sweep, PerStep };

  int steps{0};
  double delta_deg{0.0};
  double eta_deg{0.0};
  std::vector<double> theta_deg{15.0, 30.0, 45.0, 60.0, 75.0};
  ThetaMode theta_mode{ThetaMode::Sweep};
  std::string variant{"single_coin"};
  std::set<std::string> outputs{"positions", "frequencies"};
  std::string out_dir{"."};
  double prune_eps{1e-14};
  int jobs{1};

  // Test hook: when >= 0, the state at this step index is deliberately
  // corrupted after evolution so the invariant gate fires. Not a config
  // key; set only via the hidden CLI flag.
  int corrupt_at_step{-1};
};

// Exit codes shared by the runner and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitInvariant = 4;

// Parses a JSON configuration document. Unknown keys are rejected; missing
// keys other than `steps`, `delta_deg` and `theta_deg` take defaults.
RunSpec parse_config(const std::string& text);

// Runs the experiment and writes per-theta CSV trees plus manifest.json
// under spec.out_dir. Returns one of the kExit* codes.
int run(const RunSpec& spec);

}  // namespace qwalk
