#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>

#include "ordet/law.hpp"

namespace ordet {

enum class PolicyKind { identity, loglik, censoring };

std::string_view to_string(PolicyKind kind) noexcept;

/// A transmission policy: the local transform T applied by every sensor and
/// the law of Z = T(X) it induces under each hypothesis. Sensor i fires at a
/// time proportional to 1 / |T(X_i)|.
class Policy {
 public:
  Policy(PolicyKind kind, std::function<double(double)> transform, LawPair x_law, LawPair z_law);

  PolicyKind kind() const noexcept { return kind_; }
  double transform(double x) const { return transform_(x); }
  const ScalarLaw& x_law(Hypothesis h) const { return x_law_[h]; }
  const ScalarLaw& z_law(Hypothesis h) const { return z_law_[h]; }

  /// True when neither Z-law carries an atom, i.e. exact integration applies.
  bool is_continuous() const;

 private:
  PolicyKind kind_;
  std::function<double(double)> transform_;
  LawPair x_law_;
  LawPair z_law_;
};

/// MO policy with T(x) = x.
Policy identity_policy(LawPair x_law);

/// l-MO policy for the Gaussian shift in mean N(-theta0, sigma) vs
/// N(theta1, sigma). T is the log-likelihood ratio, an affine map, so the
/// Z-laws are Gaussian: mean +-d^2/(2 sigma^2), sd d/sigma, d = theta0 + theta1.
Policy gaussian_llr_policy(double theta0, double theta1, double sigma);

/// Censoring policy: T(x) = x if |x| >= theta_c, else 0.
Policy censoring_policy(LawPair x_law, double theta_c);

struct DetectionOutcome {
  Hypothesis decision = Hypothesis::h1;
  /// 1-based index of the firing sensor; 0 when nobody fires.
  std::size_t winner_index = 0;
  /// M, the transformed sample of the firing sensor (0 when all censored).
  double winner_statistic = 0.0;
  double firing_time = 0.0;
  std::size_t n_active = 0;
  bool all_censored = false;
};

/// One-shot winner-takes-all decision: the largest |Z| fires first and its
/// local decision (H1 iff Z >= threshold) is final. Ties go to the lowest
/// index. With no transmitting sensor the rule is applied to M = 0 and
/// `all_censored` is set.
DetectionOutcome decide(std::span<const double> z, double threshold);

/// Same with per-sensor clock offsets: sensor i fires at 1/|Z_i| + offset_i
/// and only sensors with Z_i != 0 transmit. Throws InvalidInput when the
/// lengths differ.
DetectionOutcome decide(std::span<const double> z, double threshold,
                        std::span<const double> offsets);

/// Binary decision of the local test at the firing sensor.
constexpr Hypothesis local_decision(double statistic, double threshold) noexcept {
  return statistic >= threshold ? Hypothesis::h1 : Hypothesis::h0;
}

}  // namespace ordet
