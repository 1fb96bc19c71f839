#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dimerlab/cli/config.hpp"

namespace dimerlab::cli {

struct OutputOptions {
  std::filesystem::path out_dir = ".";
  bool svg = false;
  unsigned threads = 1;
};

struct CommandReport {
  std::vector<std::filesystem::path> files;
  /// Human-readable summary for stdout.
  std::string summary;
};

/// Runs a parsed configuration and writes its output files.  Core failures
/// propagate as dimerlab::Error; write failures as IoError.
CommandReport run(const RunConfig& config, const OutputOptions& out);

/// Writes `content` to `path` (binary mode), creating parent directories.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace dimerlab::cli
