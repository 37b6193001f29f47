#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "qwalk/netlist.hpp"
#include "qwalk/runner.hpp"

namespace {

constexpr const char* kVersion = "qwalk 1.0.0";

int cmd_run(const std::string& config_path, const std::string& out_dir,
            int jobs, int corrupt_at_step) {
  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open config file: " << config_path << "\n";
    return qwalk::kExitIo;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();

  qwalk::RunSpec spec;
  try {
    spec = qwalk::parse_config(buffer.str());
  } catch (const qwalk::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qwalk::kExitConfig;
  }
  if (!out_dir.empty()) spec.out_dir = out_dir;
  if (jobs > 0) spec.jobs = jobs;
  spec.corrupt_at_step = corrupt_at_step;
  return qwalk::run(spec);
}

int cmd_netlist(int steps, const std::string& layout,
                const std::string& format) {
  qwalk::WalkConfig config;
  config.variant = layout == "two_coin" ? qwalk::StepVariant::TwoCoin
                                        : qwalk::StepVariant::SingleCoin;
  config.coin = qwalk::CoinSchedule::uniform(0.0);
  try {
    const qwalk::Netlist netlist = qwalk::build_netlist(steps, config);
    std::cout << qwalk::emit(netlist, format == "dot"
                                          ? qwalk::NetlistFormat::Dot
                                          : qwalk::NetlistFormat::Json);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qwalk::kExitConfig;
  }
  return qwalk::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polarization-controlled quantum walk simulator"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run an experiment config");
  std::string config_path;
  std::string out_dir;
  int jobs = 0;
  int corrupt_at_step = -1;
  run_cmd->add_option("--config", config_path, "JSON config file")
      ->required();
  run_cmd->add_option("--out", out_dir, "Output directory override");
  run_cmd->add_option("--jobs", jobs, "Parallel sweep jobs");
  run_cmd
      ->add_option("--corrupt-step", corrupt_at_step,
                   "Test hook: corrupt the state at this step")
      ->group("");  // hidden

  auto* netlist_cmd =
      app.add_subcommand("netlist", "Emit the optical-circuit netlist");
  int steps = 1;
  std::string layout = "single_coin";
  std::string format = "json";
  netlist_cmd->add_option("--steps", steps, "Number of walk steps")
      ->required();
  netlist_cmd->add_option("--layout", layout, "single_coin or two_coin")
      ->check(CLI::IsMember({"single_coin", "two_coin"}));
  netlist_cmd->add_option("--format", format, "json or dot")
      ->check(CLI::IsMember({"json", "dot"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qwalk::kExitConfig;
  }

  if (run_cmd->parsed())
    return cmd_run(config_path, out_dir, jobs, corrupt_at_step);
  return cmd_netlist(steps, layout, format);
}
