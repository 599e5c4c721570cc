#include "ordet/network.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "ordet/error.hpp"
#include "ordet/numeric.hpp"

namespace ordet {
namespace {

constexpr std::int64_t kMaxStoppedSize = 100'000'000;
constexpr double kPmfMassFloor = 1.0 - 1e-10;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double accumulate_energy(const EnergyAccumulator& acc, double running, double s) {
  return acc ? acc(running, s) : running + s * s;
}

// Support of R = Q / E(Q).
std::pair<double, double> thinning_range(const MixedPoisson& m) {
  const double half = 0.5 * m.delta / m.eq;
  return {1.0 - half, 1.0 + half};
}

double second_moment(const ScalarLaw& law) {
  std::vector<double> points;
  for (double q : {1e-14, 1e-10, 1e-6, 1e-3, 0.1, 0.5}) points.push_back(law.quantile(q));
  for (double q : {0.1, 1e-3, 1e-6, 1e-10, 1e-14}) points.push_back(law.upper_quantile(q));
  std::sort(points.begin(), points.end());
  return quadrature([&law](double s) { return s * s * law.density(s); }, points, 1e-12);
}

}  // namespace

void validate(const SizeModel& model) {
  std::visit(Overloaded{
                 [](const Deterministic& d) {
                   if (d.n < 0) throw InvalidParameter("Deterministic: n must be >= 0");
                 },
                 [](const MixedPoisson& m) {
                   if (m.nu < 1) throw InvalidParameter("MixedPoisson: nu must be >= 1");
                   if (!(m.eq > 0.0 && m.eq <= 1.0)) {
                     throw InvalidParameter("MixedPoisson: eq must lie in (0, 1]");
                   }
                   if (!(m.delta >= 0.0 && m.delta < 2.0 * m.eq)) {
                     throw InvalidParameter("MixedPoisson: delta must lie in [0, 2 eq)");
                   }
                   if (m.eq + 0.5 * m.delta > 1.0) {
                     throw InvalidParameter("MixedPoisson: eq + delta/2 must not exceed 1");
                   }
                 },
                 [](const EnergyStopped& e) {
                   if (e.nu < 1) throw InvalidParameter("EnergyStopped: nu must be >= 1");
                 },
             },
             model);
}

std::int64_t design_nu(const SizeModel& model) {
  return std::visit(Overloaded{
                        [](const Deterministic& d) { return d.n; },
                        [](const MixedPoisson& m) { return m.nu; },
                        [](const EnergyStopped& e) { return e.nu; },
                    },
                    model);
}

bool is_data_independent(const SizeModel& model) {
  return !std::holds_alternative<EnergyStopped>(model);
}

std::int64_t draw_size(const SizeModel& model, Hypothesis /*h*/, Rng& rng) {
  if (const auto* d = std::get_if<Deterministic>(&model)) return d->n;
  if (const auto* m = std::get_if<MixedPoisson>(&model)) {
    const double q = m->eq + m->delta * (uniform_open01(rng) - 0.5);
    const double mean = static_cast<double>(m->nu) * q / m->eq;
    std::poisson_distribution<std::int64_t> poisson(mean);
    return poisson(rng);
  }
  throw InvalidInput("draw_size: EnergyStopped sizes depend on the samples; use draw_network");
}

std::int64_t stopping_index(std::span<const double> s, double nu,
                            const EnergyAccumulator& accumulate) {
  double running = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    running = accumulate_energy(accumulate, running, s[i]);
    if (running > nu) return static_cast<std::int64_t>(i + 1);
  }
  return 0;
}

SensorDraw draw_network(const SizeModel& model, const Policy& policy, Hypothesis h,
                        double clock_delta, Rng& rng) {
  if (!(clock_delta >= 0.0)) throw InvalidParameter("draw_network: clock_delta must be >= 0");
  SensorDraw draw;
  if (const auto* e = std::get_if<EnergyStopped>(&model)) {
    const ScalarLaw& s_law = e->s_law[h];
    const double nu = static_cast<double>(e->nu);
    double running = 0.0;
    while (true) {
      const double s = s_law.sample(rng);
      const double w = e->w_law.sample(rng);
      draw.s_samples.push_back(s);
      draw.x_samples.push_back(s + w);
      running = accumulate_energy(e->accumulate, running, s);
      if (running > nu) break;
      if (static_cast<std::int64_t>(draw.s_samples.size()) >= kMaxStoppedSize) {
        throw NumericFailure("draw_network: energy never exceeded nu", running);
      }
    }
    draw.n_active = static_cast<std::int64_t>(draw.x_samples.size());
  } else {
    draw.n_active = draw_size(model, h, rng);
    const ScalarLaw& x_law = policy.x_law(h);
    draw.x_samples.resize(static_cast<std::size_t>(draw.n_active));
    for (double& x : draw.x_samples) x = x_law.sample(rng);
  }
  if (clock_delta > 0.0) {
    draw.offsets.resize(draw.x_samples.size());
    for (double& u : draw.offsets) u = clock_delta * (uniform_open01(rng) - 0.5);
  }
  return draw;
}

SizePmf size_pmf(const SizeModel& model) {
  validate(model);
  if (const auto* d = std::get_if<Deterministic>(&model)) return SizePmf::point_mass(d->n);
  const auto* m = std::get_if<MixedPoisson>(&model);
  if (m == nullptr) {
    throw InvalidInput("size_pmf: EnergyStopped has no data-independent size law");
  }

  const double nu = static_cast<double>(m->nu);
  const auto [r_lo, r_hi] = thinning_range(*m);
  const double mean_lo = nu * r_lo;
  const double mean_hi = nu * r_hi;
  const double spread = 12.0 * std::sqrt(std::max(mean_hi, 1.0));
  const auto first = static_cast<std::int64_t>(std::max(0.0, std::floor(mean_lo - spread)));
  const auto last = static_cast<std::int64_t>(std::ceil(mean_hi + spread + 12.0));

  SizePmf pmf;
  pmf.first = first;
  pmf.mass.reserve(static_cast<std::size_t>(last - first + 1));
  for (std::int64_t n = first; n <= last; ++n) {
    const double k = static_cast<double>(n);
    double p;
    if (m->delta == 0.0) {
      p = std::exp(k * std::log(nu) - nu - std::lgamma(k + 1.0));
      if (n == 0) p = std::exp(-nu);
    } else {
      // Uniform R on [r_lo, r_hi]: the Poisson mass integrates to a
      // difference of regularized incomplete gamma functions.
      p = (boost::math::gamma_p(k + 1.0, mean_hi) - boost::math::gamma_p(k + 1.0, mean_lo)) /
          (mean_hi - mean_lo);
    }
    pmf.mass.push_back(std::max(p, 0.0));
  }
  const double total = pmf.total();
  if (total < kPmfMassFloor) {
    throw NumericFailure("size_pmf: truncated mass " + std::to_string(total) + " below 1 - 1e-10",
                         total);
  }
  return pmf;
}

SizeLimitLaw size_limit_law(const SizeModel& model, Hypothesis h) {
  validate(model);
  if (std::holds_alternative<Deterministic>(model)) return SizeLimitLaw::point_mass(1.0);
  if (const auto* m = std::get_if<MixedPoisson>(&model)) {
    const auto [lo, hi] = thinning_range(*m);
    return SizeLimitLaw::uniform(lo, hi);
  }
  const auto& e = std::get<EnergyStopped>(model);
  if (e.accumulate) {
    throw InvalidInput("size_limit_law: limit of N/nu is only known for the sum-of-squares energy");
  }
  // Renewal theorem: N / nu -> 1 / E[S^2].
  return SizeLimitLaw::point_mass(1.0 / second_moment(e.s_law[h]));
}

}  // namespace ordet
