#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ordet_tools/config.hpp"

namespace ordet::tools {

inline constexpr const char* kCsvHeader = "nu,gamma_nu,alpha,beta,alpha_ci,beta_ci,bound,method";

struct CsvRow {
  std::int64_t nu = 0;
  double gamma_nu = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<double> alpha_ci;
  std::optional<double> beta_ci;
  std::optional<double> bound;
  Method method = Method::quadrature;
  std::optional<ErrorEstimate> estimate;  ///< Monte Carlo rows only
};

/// One CSV line (no newline), numbers with 12 significant digits.
std::string format_row(const CsvRow& row);

/// Computes one grid point with the given method (quadrature or montecarlo).
CsvRow compute_row(const ExperimentConfig& cfg, const Policy& policy, std::int64_t nu, Method method,
                   const McOptions& mc);

struct RunOptions {
  unsigned workers = 0;
  std::ostream* log = nullptr;
};

struct RunResult {
  std::vector<std::string> files;
  std::string manifest;
  double wall_seconds = 0.0;
};

/// Writes the main CSV (rows flushed as they complete), scenario companions
/// and `<output>.manifest.json`. Numeric failures are recorded in the
/// manifest and rethrown after the partial CSV is closed.
RunResult run_experiment(const ExperimentConfig& cfg, const RunOptions& options = {});

/// Path of a companion table: output without a trailing ".csv", plus suffix.
std::string companion_path(const std::string& output, const std::string& suffix);

}  // namespace ordet::tools
