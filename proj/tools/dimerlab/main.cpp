#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dimerlab/cli/commands.hpp"
#include "dimerlab/cli/config.hpp"
#include "dimerlab/error.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kNumericFailure = 3;
constexpr int kIoError = 4;

}  // namespace

int main(int argc, char** argv) {
  using namespace dimerlab::cli;

  CLI::App app{"Two-mode nonlinear Schroedinger dimer: critical constants, bifurcations, dynamics, reduction"};
  std::string command_name;
  std::string config_path;
  std::string out_dir = ".";
  bool svg = false;
  app.add_option("command", command_name, "critical | bifurcation | portrait | simulate | reduce")
      ->required()
      ->check(CLI::IsMember({"critical", "bifurcation", "portrait", "simulate", "reduce"}));
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out-dir", out_dir, "output directory (created if missing)");
  app.add_flag("--svg", svg, "also write SVG plots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    const Command command = *parse_command(command_name);
    OutputOptions out;
    out.out_dir = out_dir;
    out.svg = svg;
    out.threads = thread_budget(std::getenv("DIMERLAB_THREADS"));
    const RunConfig config = load_config(command, config_path);
    const CommandReport report = run(config, out);
    std::cout << report.summary;
    for (const auto& f : report.files) std::cout << "wrote " << f.string() << "\n";
    return kOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const dimerlab::Error& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumericFailure;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumericFailure;
  }
}
