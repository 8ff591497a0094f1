#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace hcad::cli {

/// Environment variable naming a default config file.
inline constexpr const char* kConfigEnv = "HCAD_CONFIG";

enum ExitCode : int { kSuccess = 0, kFailure = 1, kEnvironmentError = 2 };

/// Run settings. Precedence: command-line flags, then config file, then these defaults.
struct RunConfig {
  double chord_tolerance = 1e-3;
  std::size_t n_points = 8192;
  std::uint64_t seed = 0;
  int jsd_grid = 32;
  double epsilon = 6e-4;
  std::array<double, 3> ratios = {0.10, 0.50, 0.40};
  int jobs = 0;  // 0: OpenMP default
};

/// Reads a RunConfig JSON file; missing keys keep their defaults.
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});
/// Throws ConfigError on out-of-range values.
void check_config(const RunConfig& config);

/// Entry point of the `hcad` tool. JSON results go to `out`, logs to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hcad::cli
