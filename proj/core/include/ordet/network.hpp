#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "ordet/evt.hpp"
#include "ordet/law.hpp"
#include "ordet/pmf.hpp"
#include "ordet/policy.hpp"
#include "ordet/random.hpp"

namespace ordet {

/// Exactly n active sensors; nu = n.
struct Deterministic {
  std::int64_t n = 1;
};

/// Poisson-deployed sensors with random thinning: Q = eq + U,
/// U ~ Uniform(-delta/2, delta/2), and N | Q ~ Poisson(nu Q / eq), so E(N) = nu.
struct MixedPoisson {
  std::int64_t nu = 1;
  double eq = 1.0;
  double delta = 0.0;
};

/// phi update: running energy after observing one more state sample.
using EnergyAccumulator = std::function<double(double running, double s)>;

/// Sampling stops at N = inf{n : phi(S_1..S_n) > nu}. Sensors observe
/// X_i = S_i + W_i. Without an accumulator phi is the running sum of S_i^2.
struct EnergyStopped {
  std::int64_t nu = 1;
  LawPair s_law;
  ScalarLaw w_law;
  EnergyAccumulator accumulate;
};

using SizeModel = std::variant<Deterministic, MixedPoisson, EnergyStopped>;

/// Throws InvalidParameter when a model parameter is outside its domain.
void validate(const SizeModel& model);

/// The design parameter nu of the model.
std::int64_t design_nu(const SizeModel& model);

/// False for EnergyStopped, where N is coupled to the observations.
bool is_data_independent(const SizeModel& model);

/// Draws N for data-independent models. EnergyStopped throws InvalidInput:
/// its size only exists jointly with the samples (see draw_network).
std::int64_t draw_size(const SizeModel& model, Hypothesis h, Rng& rng);

struct SensorDraw {
  std::int64_t n_active = 0;
  std::vector<double> x_samples;
  std::vector<double> s_samples;  ///< EnergyStopped only.
  std::vector<double> offsets;    ///< Present when clock_delta > 0.
};

/// One network realization under hypothesis h. X samples follow
/// policy.x_law(h) except for EnergyStopped, where X = S + W. Clock offsets
/// are iid Uniform(-clock_delta/2, clock_delta/2).
SensorDraw draw_network(const SizeModel& model, const Policy& policy, Hypothesis h,
                        double clock_delta, Rng& rng);

/// First n (1-based) with phi(s_1..s_n) > nu, or 0 if the sequence never
/// crosses. A null accumulator means sum of squares.
std::int64_t stopping_index(std::span<const double> s, double nu,
                            const EnergyAccumulator& accumulate = {});

/// Marginal pmf of N, truncated to cumulative mass >= 1 - 1e-10.
/// EnergyStopped throws InvalidInput.
SizePmf size_pmf(const SizeModel& model);

/// Law of R, the limit in probability of N / nu under hypothesis h.
SizeLimitLaw size_limit_law(const SizeModel& model, Hypothesis h);

}  // namespace ordet
