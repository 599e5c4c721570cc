#include "ordet/evt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ordet/error.hpp"
#include "ordet/numeric.hpp"

namespace ordet {

EvtFamily EvtFamily::frechet(double xi) {
  if (!(std::isfinite(xi) && xi > 0.0)) throw InvalidParameter("EvtFamily: Frechet xi must be > 0");
  return {FamilyKind::frechet, xi};
}

NormConstants norm_constants(const ScalarLaw& law, std::int64_t n, const EvtFamily& family) {
  if (n < 2) throw InvalidParameter("norm_constants: n must be >= 2");
  const double tail = 1.0 / static_cast<double>(n);
  const double q = law.upper_quantile(tail);
  if (family.kind == FamilyKind::frechet) {
    if (!(q > 0.0) || !std::isfinite(q)) {
      throw NumericFailure("norm_constants: Frechet scale F^-1(1 - 1/n) must be positive", q);
    }
    return {q, 0.0};
  }
  const double f = law.density(q);
  const double a = 1.0 / (static_cast<double>(n) * f);
  if (!(f > 0.0) || !std::isfinite(a)) {
    throw NumericFailure("norm_constants: density vanishes at b_n = " + std::to_string(q), q);
  }
  return {a, q};
}

double limiting_cdf(const EvtFamily& family, double x) {
  if (family.kind == FamilyKind::gumbel) return std::exp(-std::exp(-x));
  if (x <= 0.0) return 0.0;
  return std::exp(-std::pow(x, -family.xi));
}

SizeLimitLaw::SizeLimitLaw(Kind kind, std::vector<double> values, std::vector<double> weights)
    : kind_(kind),
      values_(std::make_shared<const std::vector<double>>(std::move(values))),
      weights_(std::make_shared<const std::vector<double>>(std::move(weights))) {}

SizeLimitLaw SizeLimitLaw::point_mass(double r) { return discrete({r}, {1.0}); }

SizeLimitLaw SizeLimitLaw::discrete(std::vector<double> values, std::vector<double> weights) {
  if (values.empty() || values.size() != weights.size()) {
    throw InvalidParameter("SizeLimitLaw: values and weights must be non-empty and equally long");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(std::isfinite(values[i]) && values[i] > 0.0)) {
      throw InvalidParameter("SizeLimitLaw: support must be positive");
    }
    if (!(weights[i] >= 0.0)) throw InvalidParameter("SizeLimitLaw: weights must be >= 0");
    total += weights[i];
  }
  if (!(total > 0.0)) throw InvalidParameter("SizeLimitLaw: weights sum to zero");
  for (double& w : weights) w /= total;
  return SizeLimitLaw(Kind::discrete, std::move(values), std::move(weights));
}

SizeLimitLaw SizeLimitLaw::uniform(double lo, double hi) {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo > 0.0 && lo <= hi)) {
    throw InvalidParameter("SizeLimitLaw: uniform support must satisfy 0 < lo <= hi");
  }
  if (lo == hi) return point_mass(lo);
  return SizeLimitLaw(Kind::uniform, {lo, hi}, {});
}

SizeLimitLaw SizeLimitLaw::sampled(std::function<double(Rng&)> sampler, std::uint64_t seed,
                                   std::size_t samples) {
  if (!sampler || samples == 0) throw InvalidParameter("SizeLimitLaw: empty sampler");
  Rng rng(seed);
  std::vector<double> draws(samples);
  for (double& d : draws) {
    d = sampler(rng);
    if (!(d > 0.0)) throw InvalidParameter("SizeLimitLaw: sampled R must be positive");
  }
  return SizeLimitLaw(Kind::sampled, std::move(draws), {});
}

double SizeLimitLaw::expectation(const std::function<double(double)>& g) const {
  double result = 0.0;
  switch (kind_) {
    case Kind::discrete:
      for (std::size_t i = 0; i < values_->size(); ++i) result += (*weights_)[i] * g((*values_)[i]);
      break;
    case Kind::uniform: {
      const double lo = (*values_)[0];
      const double hi = (*values_)[1];
      result = quadrature(g, lo, hi, 1e-13 * (hi - lo)) / (hi - lo);
      break;
    }
    case Kind::sampled:
      for (double r : *values_) result += g(r);
      result /= static_cast<double>(values_->size());
      break;
  }
  if (!std::isfinite(result)) throw NumericFailure("SizeLimitLaw: expectation is not finite", result);
  return result;
}

double SizeLimitLaw::sample(Rng& rng) const {
  const double u = uniform_open01(rng);
  switch (kind_) {
    case Kind::discrete: {
      double acc = 0.0;
      for (std::size_t i = 0; i < values_->size(); ++i) {
        acc += (*weights_)[i];
        if (u < acc) return (*values_)[i];
      }
      return values_->back();
    }
    case Kind::uniform:
      return (*values_)[0] + u * ((*values_)[1] - (*values_)[0]);
    case Kind::sampled: {
      const auto i = static_cast<std::size_t>(u * static_cast<double>(values_->size()));
      return (*values_)[std::min(i, values_->size() - 1)];
    }
  }
  return 1.0;
}

double SizeLimitLaw::mean() const {
  return expectation([](double r) { return r; });
}

double random_index_limit(const EvtFamily& family, const SizeLimitLaw& r, double x) {
  const double g = limiting_cdf(family, x);
  if (g <= 0.0) return 0.0;
  const double log_g = std::log(g);
  return r.expectation([log_g](double rr) { return std::exp(rr * log_g); });
}

std::string_view to_string(TailDominance t) noexcept {
  switch (t) {
    case TailDominance::right:
      return "right";
    case TailDominance::left:
      return "left";
    case TailDominance::undetermined:
      return "undetermined";
  }
  return "undetermined";
}

TailDominance tail_dominance(const ScalarLaw& law) {
  if (!law.is_continuous()) throw UnsupportedLaw("tail_dominance: law must be continuous");
  auto ratio_at = [&law](int k) {
    const double x = law.upper_quantile(std::pow(10.0, -k));
    const double right = law.survival(x);
    const double left = law.cdf(-x);
    if (left == 0.0) return right > 0.0 ? HUGE_VAL : 1.0;
    return right / left;
  };
  const double first = ratio_at(2);
  const double last = ratio_at(12);
  if (last > 1e3 && last >= first) return TailDominance::right;
  if (last < 1e-3 && last <= first) return TailDominance::left;
  return TailDominance::undetermined;
}

double gamma_from_alpha_tilde(const EvtFamily& family, double alpha_tilde) {
  if (!(alpha_tilde > 0.0 && alpha_tilde < 1.0)) {
    throw InvalidParameter("gamma_from_alpha_tilde: alpha_tilde must lie in (0, 1)");
  }
  const double l = -std::log(alpha_tilde);
  if (family.kind == FamilyKind::gumbel) return std::log(l);
  return -std::pow(l, -1.0 / family.xi);
}

double alpha_tilde_from_alpha(const SizeLimitLaw& r0, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidParameter("alpha_tilde_from_alpha: alpha must lie in (0, 1)");
  }
  auto g = [&r0, alpha](double t) {
    if (t <= 0.0) return -alpha;
    const double log_t = std::log(t);
    return r0.expectation([log_t](double r) { return std::exp(r * log_t); }) - alpha;
  };
  return find_root(g, 0.0, 1.0, 1e-14);
}

double threshold_asymptotic(const NormConstants& minus, double gamma) {
  return minus.a * gamma - minus.b;
}

double threshold_refined(const ScalarLaw& z_h0, std::int64_t nu, double alpha_tilde) {
  if (nu < 1) throw InvalidParameter("threshold_refined: nu must be >= 1");
  if (!(alpha_tilde > 0.0 && alpha_tilde < 1.0)) {
    throw InvalidParameter("threshold_refined: alpha_tilde must lie in (0, 1)");
  }
  const double p = -std::expm1(std::log(alpha_tilde) / static_cast<double>(nu));
  return z_h0.quantile(p);
}

double miss_bound(double gamma_nu) { return std::exp(gamma_nu); }

double miss_bound_gaussian_approx(double snr, double n) {
  return std::exp(-snr * std::sqrt(2.0 * std::log(n)));
}

}  // namespace ordet
