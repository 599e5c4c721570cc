#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "ordet/law.hpp"
#include "ordet/random.hpp"

namespace ordet {

enum class FamilyKind { gumbel, frechet };

/// Limit law of normalized maxima. Weibull is excluded: every law here has
/// unbounded support.
struct EvtFamily {
  FamilyKind kind = FamilyKind::gumbel;
  double xi = 0.0;  ///< Frechet shape; unused for Gumbel.

  static EvtFamily gumbel() { return {FamilyKind::gumbel, 0.0}; }
  static EvtFamily frechet(double xi);
};

/// F_{M_n}(a x + b) -> G(x).
struct NormConstants {
  double a = 1.0;
  double b = 0.0;
};

/// Gumbel: b = F^-1(1 - 1/n), a = 1 / (n f(b)). Frechet: b = 0, a = F^-1(1 - 1/n).
NormConstants norm_constants(const ScalarLaw& law, std::int64_t n, const EvtFamily& family);

/// G(x): exp(-exp(-x)) for Gumbel, exp(-x^-xi) on x > 0 for Frechet.
double limiting_cdf(const EvtFamily& family, double x);

/// Law of the positive limit R of N / nu.
class SizeLimitLaw {
 public:
  static SizeLimitLaw point_mass(double r);
  static SizeLimitLaw discrete(std::vector<double> values, std::vector<double> weights);
  static SizeLimitLaw uniform(double lo, double hi);
  /// Expectations by Monte Carlo over `samples` draws from a seeded stream.
  static SizeLimitLaw sampled(std::function<double(Rng&)> sampler, std::uint64_t seed,
                              std::size_t samples = 1'000'000);

  /// E[g(R)]: exact for point and discrete laws, quadrature for the uniform
  /// law, sample mean otherwise.
  double expectation(const std::function<double(double)>& g) const;
  double sample(Rng& rng) const;
  double mean() const;

 private:
  enum class Kind { discrete, uniform, sampled };
  SizeLimitLaw(Kind kind, std::vector<double> values, std::vector<double> weights);

  Kind kind_;
  // discrete: support/weights; uniform: {lo, hi}; sampled: the draws.
  std::shared_ptr<const std::vector<double>> values_;
  std::shared_ptr<const std::vector<double>> weights_;
};

/// E[G(x)^R], the limit of F_{M_N}(a_nu x + b_nu) for random N.
double random_index_limit(const EvtFamily& family, const SizeLimitLaw& r, double x);

enum class TailDominance { right, left, undetermined };

std::string_view to_string(TailDominance t) noexcept;

/// Compares 1 - F(x) with F(-x) along x = F^-1(1 - 10^-k), k = 2..12.
/// Right when the ratio ends above 1e3 without having decreased overall,
/// left when it ends below 1e-3 without having increased.
TailDominance tail_dominance(const ScalarLaw& law);

/// Threshold gamma on the normalized scale giving deterministic-size false
/// alarm alpha_tilde = G(-gamma).
double gamma_from_alpha_tilde(const EvtFamily& family, double alpha_tilde);

/// Solves E[alpha_tilde^R0] = alpha for alpha_tilde in (0, 1).
double alpha_tilde_from_alpha(const SizeLimitLaw& r0, double alpha);

/// gamma_nu = a^-_nu gamma - b^-_nu, with constants of -Z under H0.
double threshold_asymptotic(const NormConstants& minus, double gamma);

/// gamma_nu = F_Z^-1(1 - alpha_tilde^(1/nu); H0), so that
/// (1 - F_Z(gamma_nu; H0))^nu = alpha_tilde.
double threshold_refined(const ScalarLaw& z_h0, std::int64_t nu, double alpha_tilde);

/// Chernoff bound on the miss probability of l-MO shift-in-mean detection.
double miss_bound(double gamma_nu);

/// exp(-snr sqrt(2 log n)): leading-order form of the bound for the
/// Gaussian example, for plotting against the exact bound.
double miss_bound_gaussian_approx(double snr, double n);

}  // namespace ordet
