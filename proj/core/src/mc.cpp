#include "ordet/mc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "ordet/error.hpp"
#include "ordet/random.hpp"

namespace ordet {
namespace {

struct Tally {
  std::int64_t decided_h1 = 0;
  std::int64_t censored = 0;
  std::int64_t size_sum = 0;

  Tally& operator+=(const Tally& o) {
    decided_h1 += o.decided_h1;
    censored += o.censored;
    size_sum += o.size_sum;
    return *this;
  }
};

struct TrialSetup {
  const Policy& policy;
  const SizeModel& model;
  double threshold;
  double clock_delta;
  bool extremes_only;
};

// The max of n iid draws is Q(V^(1/n)); the min of the other n - 1, given
// the max, is Q(U_max * (1 - W^(1/(n-1)))). Working with the complement of
// U_max keeps the upper quantile precise for large n.
DetectionOutcome sample_extremes(const ScalarLaw& z, std::int64_t n, double threshold, Rng& rng) {
  const double log_v = std::log(uniform_open01(rng));
  const double nn = static_cast<double>(n);
  const double z_max = z.upper_quantile(-std::expm1(log_v / nn));
  if (n == 1) {
    const std::array<double, 1> one = {z_max};
    return decide(one, threshold);
  }
  const double u_max = std::exp(log_v / nn);
  const double log_w = std::log(uniform_open01(rng));
  const double z_min = z.quantile(u_max * -std::expm1(log_w / (nn - 1.0)));
  const std::array<double, 2> pair = {z_max, z_min};
  DetectionOutcome out = decide(pair, threshold);
  out.n_active = static_cast<std::size_t>(n);
  return out;
}

DetectionOutcome run_trial(const TrialSetup& setup, Hypothesis h, Rng& rng, std::int64_t& size) {
  if (setup.extremes_only) {
    size = draw_size(setup.model, h, rng);
    if (size == 0) return decide(std::span<const double>{}, setup.threshold);
    return sample_extremes(setup.policy.z_law(h), size, setup.threshold, rng);
  }
  SensorDraw draw = draw_network(setup.model, setup.policy, h, setup.clock_delta, rng);
  size = draw.n_active;
  for (double& x : draw.x_samples) x = setup.policy.transform(x);
  if (draw.offsets.empty()) return decide(draw.x_samples, setup.threshold);
  return decide(draw.x_samples, setup.threshold, draw.offsets);
}

Tally run_range(const TrialSetup& setup, Hypothesis h, std::uint64_t seed, std::int64_t begin,
                std::int64_t end) {
  Tally t;
  const auto h_index = static_cast<std::uint64_t>(h);
  for (std::int64_t i = begin; i < end; ++i) {
    Rng rng = make_stream(seed, h_index, static_cast<std::uint64_t>(i));
    std::int64_t size = 0;
    const DetectionOutcome out = run_trial(setup, h, rng, size);
    if (out.decision == Hypothesis::h1) ++t.decided_h1;
    if (out.all_censored) ++t.censored;
    t.size_sum += size;
  }
  return t;
}

}  // namespace

WilsonInterval wilson_interval(std::int64_t successes, std::int64_t trials, double z) {
  if (trials <= 0) throw InvalidParameter("wilson_interval: trials must be positive");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {center, half};
}

ErrorEstimate estimate_errors(const Policy& policy, const SizeModel& model, double threshold,
                              double clock_delta, std::int64_t trials, std::uint64_t seed,
                              const McOptions& options) {
  if (trials < 1) throw InvalidParameter("estimate_errors: trials must be >= 1");
  if (!(clock_delta >= 0.0)) throw InvalidParameter("estimate_errors: clock_delta must be >= 0");
  validate(model);

  const TrialSetup setup{policy, model, threshold, clock_delta,
                         options.mode == SimulationMode::automatic && clock_delta == 0.0 &&
                             is_data_independent(model)};

  unsigned workers = options.workers == 0 ? std::thread::hardware_concurrency() : options.workers;
  workers = static_cast<unsigned>(
      std::clamp<std::int64_t>(workers, 1, std::max<std::int64_t>(1, trials / 64)));

  std::array<Tally, 2> totals{};
  for (Hypothesis h : kHypotheses) {
    std::vector<Tally> partial(workers);
    std::vector<std::exception_ptr> errors(workers);
    auto chunk = [&](unsigned w) {
      const std::int64_t begin = trials * w / workers;
      const std::int64_t end = trials * (w + 1) / workers;
      try {
        partial[w] = run_range(setup, h, seed, begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    };
    if (workers == 1) {
      chunk(0);
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(chunk, w);
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    for (const Tally& t : partial) totals[static_cast<std::size_t>(h)] += t;
  }

  const Tally& t0 = totals[0];
  const Tally& t1 = totals[1];
  const double n = static_cast<double>(trials);
  ErrorEstimate out;
  out.trials = trials;
  out.seed = seed;
  out.false_alarms = t0.decided_h1;
  out.misses = trials - t1.decided_h1;
  out.alpha_hat = static_cast<double>(out.false_alarms) / n;
  out.beta_hat = static_cast<double>(out.misses) / n;
  out.alpha_halfwidth = wilson_interval(out.false_alarms, trials).halfwidth;
  out.beta_halfwidth = wilson_interval(out.misses, trials).halfwidth;
  out.all_censored_fraction = static_cast<double>(t0.censored + t1.censored) / (2.0 * n);
  out.mean_size_h0 = static_cast<double>(t0.size_sum) / n;
  out.mean_size_h1 = static_cast<double>(t1.size_sum) / n;
  return out;
}

double resolve_threshold(const ThresholdRule& rule, const Policy& policy, const SizeModel& model) {
  if (rule.kind == ThresholdKind::zero) return 0.0;
  if (!(rule.alpha > 0.0 && rule.alpha < 1.0)) {
    throw InvalidParameter("resolve_threshold: alpha must lie in (0, 1)");
  }
  const std::int64_t nu = design_nu(model);
  const double alpha_tilde = alpha_tilde_from_alpha(size_limit_law(model, Hypothesis::h0), rule.alpha);
  const ScalarLaw& z0 = policy.z_law(Hypothesis::h0);
  if (rule.kind == ThresholdKind::refined) return threshold_refined(z0, nu, alpha_tilde);
  const NormConstants minus = norm_constants(negate(z0), nu, rule.family);
  return threshold_asymptotic(minus, gamma_from_alpha_tilde(rule.family, alpha_tilde));
}

bool miss_bound_applies(const Policy& policy, const SizeModel& model) {
  return policy.kind() == PolicyKind::loglik && is_data_independent(model);
}

std::uint64_t row_seed(std::uint64_t seed, std::int64_t nu) {
  Rng r = make_stream(seed, 0x5EEDULL, static_cast<std::uint64_t>(nu));
  return r();
}

std::vector<SweepRow> sweep(const Policy& policy, const SizeFamily& family,
                            std::span<const std::int64_t> nu_grid, const ThresholdRule& rule,
                            double clock_delta, std::int64_t trials, std::uint64_t seed,
                            const McOptions& options) {
  if (!family) throw InvalidInput("sweep: size family must be callable");
  for (std::size_t i = 1; i < nu_grid.size(); ++i) {
    if (nu_grid[i] <= nu_grid[i - 1]) throw InvalidInput("sweep: nu grid must be increasing");
  }
  std::vector<SweepRow> rows;
  rows.reserve(nu_grid.size());
  for (std::int64_t nu : nu_grid) {
    const SizeModel model = family(nu);
    SweepRow row;
    row.nu = nu;
    row.gamma_nu = resolve_threshold(rule, policy, model);
    row.estimate = estimate_errors(policy, model, row.gamma_nu, clock_delta, trials,
                                   row_seed(seed, nu), options);
    if (miss_bound_applies(policy, model)) row.miss_bound = miss_bound(row.gamma_nu);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace ordet
