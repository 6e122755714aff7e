#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semidens/estimate.hpp"
#include "semidens/kernels.hpp"

namespace semidens::cli {

struct GridSpec {
  double a = -5.0;
  double b = 5.0;
  long n = 201;
};

/// Parse "a:b:n" (n >= 2 points, a < b). Throws ValidationError.
GridSpec parse_grid_spec(const std::string& text);

/// Evaluation points of a grid spec, endpoints included.
std::vector<double> grid_points(const GridSpec& grid);

/// One-number-per-line data file; '#' starts a comment, blank lines are
/// skipped. Throws ParseError naming the offending line, IoError if the
/// file cannot be opened.
std::vector<double> read_data_file(const std::string& path);

/// First readable catalog among: explicit path, $SEMIDENS_CATALOG, the
/// installed data file, the source-tree data file. Throws IoError when none
/// exists.
std::string resolve_catalog_path(const std::string& explicit_path);

struct RunConfig {
  enum class Cmd { fit, bench_table, bench_mc, bandwidth };
  Cmd cmd = Cmd::fit;
  Method method = Method::et2;
  bool h_auto = false;
  double h = 0.0;
  KernelSpec kernel;
  std::string input;
  std::string output;
  GridSpec grid;
  std::uint64_t seed = 1;
  long reps = 1000;
  long n = 400;
  std::string catalog;
  bool renormalize = false;
  std::string density;
  std::string selector = "lscv";
  std::string h_grid;
};

/// Exit codes shared by run() and the binary.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitParse = 3;
inline constexpr int kExitNumeric = 4;
inline constexpr int kExitIo = 5;

/// Execute a validated config; prints results/diagnostics to stdout and a
/// structured error line to stderr on failure.
int run(const RunConfig& config);

}  // namespace semidens::cli
