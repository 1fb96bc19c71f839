#pragma once

// Run configurations: one flat JSON object per command, validated against the
// preconditions of the operation it drives.

#include <complex>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dimerlab/reduction.hpp"

namespace dimerlab::cli {

enum class Command { Critical, Bifurcation, Portrait, Simulate, Reduce };

std::optional<Command> parse_command(std::string_view name);
const char* to_string(Command c) noexcept;

/// Malformed or out-of-range configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File system failure (exit code 4).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CriticalConfig {
  double mu = 0.0;
};

struct BifurcationConfig {
  double mu = 0.0;
  double eta_min = 0.0;
  double eta_max = 0.0;
  std::size_t samples = 400;
  double jump_guard = 0.1;
};

struct PortraitConfig {
  double mu = 0.0;
  double eta = 0.0;
  std::size_t nz = 401;
  std::size_t ntheta = 401;
  /// Extra contour levels for the SVG, on top of the separatrix energies.
  std::vector<double> levels;
};

enum class ChartChoice { Phase, Amplitude };

struct SimulateConfig {
  double mu = 0.0;
  double eta = 0.0;
  ChartChoice chart = ChartChoice::Phase;
  double z0 = 0.0;
  double theta0 = 0.0;
  double global_phase = 0.0;
  /// Explicit amplitudes (amplitude chart only); overrides z0/theta0.
  std::optional<std::pair<std::complex<double>, std::complex<double>>> amplitudes;
  double tau_end = 0.0;
  double dt_init = 1e-3;
  double tol = 1e-10;
  double sample_stride = 0.01;
  /// Re-run in the amplitude chart when a phase-chart orbit reaches z = +-1.
  bool handoff = true;
};

struct ReduceConfig {
  PotentialSpec spec;
  ReductionOptions options;
  double mu = 1.0;
  std::vector<double> epsilons;
  /// Upper bound on eigenfunction CSV rows; the grid is decimated to fit.
  std::size_t max_csv_rows = 4097;
};

using RunConfig = std::variant<CriticalConfig, BifurcationConfig, PortraitConfig, SimulateConfig, ReduceConfig>;

/// Parses `text` for `command`.  Relative file references (tabulated
/// potentials) resolve against `base_dir`.  Throws ConfigError naming the
/// offending field, or IoError for unreadable referenced files.
RunConfig parse_config(Command command, std::string_view text, const std::filesystem::path& base_dir = {});

/// Reads and parses a configuration file.
RunConfig load_config(Command command, const std::filesystem::path& path);

/// Worker cap from DIMERLAB_THREADS (unset: hardware concurrency).  Throws
/// ConfigError for values that are not positive integers.
unsigned thread_budget(const char* env_value);

}  // namespace dimerlab::cli
