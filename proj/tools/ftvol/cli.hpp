#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ftvol/analysis.hpp"
#include "ftvol/timeseries.hpp"

namespace ftvol::cli {

enum ExitCode : int {
  kSuccess = 0,
  kIoError = 1,
  kValidationError = 2,
};

inline constexpr const char* kOutputDirEnv = "FTVOL_OUTPUT_DIR";

/// Effective configuration of one invocation, echoed into every metadata
/// sidecar.
struct RunConfig {
  std::string command;
  std::filesystem::path input;
  DateFormat date_format = DateFormat::Iso;
  std::string date_column = "date";
  std::string close_column = "close";
  ReturnKind kind = ReturnKind::Simple;
  Shape shape = Shape::Hat;
  Normalization normalization = Normalization::Exact;
  int horizon = 252;
  std::vector<Horizon> horizons = default_horizons();
  StdOptions std_options{};
  int lag = 0;
  bool annualize = false;
  std::filesystem::path output_dir = ".";
  std::filesystem::path output_file;  // synth only
  SynthSpec synth{};
};

/// "yearly:252,monthly:21" or bare "252,21" (named T252, T21).
std::vector<Horizon> parse_horizons(const std::string& text);

/// "0:0.005,1000:0.03"
std::vector<Regime> parse_regimes(const std::string& text);

/// Parses arguments (argv[0] is the program name) and runs the selected
/// subcommand. Returns 0 on success, 1 on IO failure, 2 on validation failure.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace ftvol::cli
