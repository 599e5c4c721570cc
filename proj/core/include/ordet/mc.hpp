#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ordet/evt.hpp"
#include "ordet/network.hpp"
#include "ordet/policy.hpp"

namespace ordet {

struct ErrorEstimate {
  double alpha_hat = 0.0;
  double beta_hat = 0.0;
  double alpha_halfwidth = 0.0;  ///< 95% Wilson interval half-width
  double beta_halfwidth = 0.0;
  std::int64_t trials = 0;       ///< per hypothesis
  std::int64_t false_alarms = 0;
  std::int64_t misses = 0;
  /// Fraction of all 2 * trials networks in which nobody transmitted.
  double all_censored_fraction = 0.0;
  double mean_size_h0 = 0.0;
  double mean_size_h1 = 0.0;
  std::uint64_t seed = 0;
};

struct WilsonInterval {
  double center = 0.0;
  double halfwidth = 0.0;
};

/// 95% Wilson score interval for `successes` out of `trials`.
WilsonInterval wilson_interval(std::int64_t successes, std::int64_t trials, double z = 1.959963984540054);

enum class SimulationMode {
  /// Sample only the two extremes when that is exact in law (size independent
  /// of the data, no clock offsets); full networks otherwise.
  automatic,
  /// Always draw every sensor and run the winner rule on the whole network.
  full_network,
};

struct McOptions {
  unsigned workers = 0;  ///< 0 = hardware concurrency
  SimulationMode mode = SimulationMode::automatic;
};

/// Monte Carlo false-alarm and miss rates: `trials` independent networks per
/// hypothesis. Trial i under hypothesis h uses the stream make_stream(seed,
/// h, i), and counts are reduced as integers, so the result does not depend
/// on the worker count.
ErrorEstimate estimate_errors(const Policy& policy, const SizeModel& model, double threshold,
                              double clock_delta, std::int64_t trials, std::uint64_t seed,
                              const McOptions& options = {});

enum class ThresholdKind { zero, asymptotic, refined };

struct ThresholdRule {
  ThresholdKind kind = ThresholdKind::zero;
  double alpha = 0.01;  ///< asymptotic false-alarm target (parametric rules)
  EvtFamily family = EvtFamily::gumbel();
};

/// gamma_nu for the model's design nu. Parametric rules first solve
/// E[alpha_tilde^R0] = alpha with R0 the H0 limit of N / nu.
double resolve_threshold(const ThresholdRule& rule, const Policy& policy, const SizeModel& model);

/// True when the Chernoff miss bound applies: l-MO with data-independent N.
bool miss_bound_applies(const Policy& policy, const SizeModel& model);

struct SweepRow {
  std::int64_t nu = 0;
  double gamma_nu = 0.0;
  ErrorEstimate estimate;
  std::optional<double> miss_bound;
};

using SizeFamily = std::function<SizeModel(std::int64_t nu)>;

/// Row seed used by sweep for a given nu.
std::uint64_t row_seed(std::uint64_t seed, std::int64_t nu);

/// estimate_errors over an increasing nu grid with the threshold schedule
/// given by `rule`.
std::vector<SweepRow> sweep(const Policy& policy, const SizeFamily& family,
                            std::span<const std::int64_t> nu_grid, const ThresholdRule& rule,
                            double clock_delta, std::int64_t trials, std::uint64_t seed,
                            const McOptions& options = {});

}  // namespace ordet
