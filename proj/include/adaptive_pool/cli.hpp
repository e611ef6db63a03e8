#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "adaptive_pool/training.hpp"

namespace adaptive_pool {

/// Parsed command line. Paths left empty are not used by the subcommand.
struct CliConfig {
  std::string subcommand;  // pool | compress | grid-viz | train-demo | gradcheck
  std::string input;
  std::string output;
  std::string rois;
  std::string importance;
  std::string grid;      // grid JSON to read (grid-viz)
  std::string grid_out;  // grid JSON to write
  std::string report;
  int k_cols = 30;
  int k_rows = 30;
  bool upscale = false;
  std::uint64_t seed = 0;
  int instances = 100;
  int size = 32;
  int roi_size = 8;
  TrainConfig train;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Parses args (without the program name). Returns nullopt after printing
/// usage to `err` (or help to `out`, in which case exit_code is 0).
std::optional<CliConfig> parse_cli(const std::vector<std::string>& args, std::ostream& out,
                                   std::ostream& err, int& exit_code);

/// Runs one subcommand. Library failures print a one-line diagnostic and
/// return 1; bad flags print usage and return 2.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace adaptive_pool
