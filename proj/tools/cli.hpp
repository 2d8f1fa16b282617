#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "multient/correlations.hpp"
#include "multient/ggm.hpp"
#include "multient/series.hpp"

namespace multient::cli {

/// Everything a run depends on. Echoed into the header of every output file.
struct RunConfig {
  std::string command;
  double alpha_min = 0.0;
  double alpha_max = 5.0;
  double alpha_step = 0.01;
  int n_max = kDefaultMaxBlock;
  std::vector<int> sizes{8, 10, 12};
  GmConvention convention = GmConvention::PaperEigenvalue;
  BipartitionMode bipartitions = BipartitionMode::ContiguousBlocks;
  std::optional<double> h_field;  // unset: 0 for even N, kOddChainField for odd N
  double tol = 1e-10;             // quadrature tolerance
  double threshold = kDefaultThresholdFactor;
  int threads = 0;
  std::uint64_t seed = 20120701;
  std::string out = "-";
  // scaling-fit
  std::vector<std::string> inputs;
  std::string points;
  double alpha_c = 1.0;
  std::string which = "second";

  /// Throws ConfigError on the first invalid field.
  void validate() const;
};

/// 15 significant digits, shortest form, locale independent. NaN -> "nan".
std::string format_number(double value);

/// Output path for one chain size: "-" stays "-", otherwise _N<N> goes in
/// front of the extension.
std::string path_for_size(const std::string& out, int N);

/// Parses "8:2.6,10:1.7" into scaling points.
std::vector<ScalingPoint> parse_points(const std::string& text);

/// Reads a finite-sweep CSV back into (N, GGM series).
struct SweepFile {
  int N = 0;
  SweepSeries ggm;
};
SweepFile read_sweep_file(const std::string& path);

/// Entry point. Returns the process exit code: 0 ok, 2 configuration error,
/// 3 numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace multient::cli
