#include "ordet/policy.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "ordet/error.hpp"

namespace ordet {

std::string_view to_string(PolicyKind kind) noexcept {
  switch (kind) {
    case PolicyKind::identity:
      return "identity";
    case PolicyKind::loglik:
      return "llr";
    case PolicyKind::censoring:
      return "censoring";
  }
  return "unknown";
}

Policy::Policy(PolicyKind kind, std::function<double(double)> transform, LawPair x_law,
               LawPair z_law)
    : kind_(kind),
      transform_(std::move(transform)),
      x_law_(std::move(x_law)),
      z_law_(std::move(z_law)) {
  if (!transform_) throw InvalidParameter("Policy: transform must be callable");
}

bool Policy::is_continuous() const {
  return z_law_.h0.is_continuous() && z_law_.h1.is_continuous();
}

Policy identity_policy(LawPair x_law) {
  LawPair z_law = x_law;
  return Policy(PolicyKind::identity, [](double x) { return x; }, std::move(x_law),
                std::move(z_law));
}

Policy gaussian_llr_policy(double theta0, double theta1, double sigma) {
  if (!(std::isfinite(theta0) && theta0 >= 0.0)) {
    throw InvalidParameter("gaussian_llr_policy: theta0 must be >= 0");
  }
  if (!(std::isfinite(theta1) && theta1 > 0.0)) {
    throw InvalidParameter("gaussian_llr_policy: theta1 must be > 0");
  }
  if (!(std::isfinite(sigma) && sigma > 0.0)) {
    throw InvalidParameter("gaussian_llr_policy: sigma must be > 0");
  }
  const double var = sigma * sigma;
  const double d = theta0 + theta1;
  const double slope = d / var;
  const double offset = (theta0 * theta0 - theta1 * theta1) / (2.0 * var);
  const double z_mean = d * d / (2.0 * var);
  const double z_sd = d / sigma;
  return Policy(PolicyKind::loglik, [slope, offset](double x) { return slope * x + offset; },
                LawPair{gaussian(-theta0, sigma), gaussian(theta1, sigma)},
                LawPair{gaussian(-z_mean, z_sd), gaussian(z_mean, z_sd)});
}

Policy censoring_policy(LawPair x_law, double theta_c) {
  if (!(std::isfinite(theta_c) && theta_c > 0.0)) {
    throw InvalidParameter("censoring_policy: theta_c must be > 0");
  }
  LawPair z_law{censor(x_law.h0, theta_c), censor(x_law.h1, theta_c)};
  return Policy(
      PolicyKind::censoring,
      [theta_c](double x) { return std::abs(x) >= theta_c ? x : 0.0; }, std::move(x_law),
      std::move(z_law));
}

namespace {

DetectionOutcome finish(std::span<const double> z, double threshold, std::size_t winner,
                        double firing_time) {
  DetectionOutcome out;
  out.n_active = z.size();
  if (winner == z.size()) {
    out.all_censored = true;
    out.winner_index = 0;
    out.winner_statistic = 0.0;
    out.firing_time = std::numeric_limits<double>::infinity();
  } else {
    out.winner_index = winner + 1;
    out.winner_statistic = z[winner];
    out.firing_time = firing_time;
  }
  out.decision = local_decision(out.winner_statistic, threshold);
  return out;
}

}  // namespace

DetectionOutcome decide(std::span<const double> z, double threshold) {
  std::size_t winner = z.size();
  double best = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double m = std::abs(z[i]);
    if (m > best) {
      best = m;
      winner = i;
    }
  }
  return finish(z, threshold, winner, winner == z.size() ? 0.0 : 1.0 / best);
}

DetectionOutcome decide(std::span<const double> z, double threshold,
                        std::span<const double> offsets) {
  if (offsets.size() != z.size()) {
    throw InvalidInput("decide: " + std::to_string(offsets.size()) + " offsets for " +
                       std::to_string(z.size()) + " sensors");
  }
  std::size_t winner = z.size();
  double earliest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] == 0.0) continue;
    const double t = 1.0 / std::abs(z[i]) + offsets[i];
    if (t < earliest) {
      earliest = t;
      winner = i;
    }
  }
  return finish(z, threshold, winner, earliest);
}

}  // namespace ordet
