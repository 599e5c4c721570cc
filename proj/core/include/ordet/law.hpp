#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>

#include "ordet/random.hpp"

namespace ordet {

enum class Hypothesis { h0, h1 };

inline constexpr std::array<Hypothesis, 2> kHypotheses = {Hypothesis::h0, Hypothesis::h1};

constexpr std::string_view to_string(Hypothesis h) noexcept {
  return h == Hypothesis::h0 ? "H0" : "H1";
}

struct Support {
  double lo;
  double hi;
};

namespace detail {

/// Implementation interface behind ScalarLaw. Only `density`, `cdf`,
/// `support` and `describe` are mandatory; the rest have generic fallbacks
/// (complement, root finding on the cdf, inverse-transform sampling).
class LawImpl {
 public:
  virtual ~LawImpl() = default;

  virtual double density(double x) const = 0;
  virtual double log_density(double x) const;
  virtual double cdf(double x) const = 0;
  virtual double survival(double x) const;
  virtual double quantile(double p) const;
  virtual double upper_quantile(double q) const;
  virtual double sample(Rng& rng) const;
  virtual double atom_at_zero() const { return 0.0; }
  virtual Support support() const = 0;
  virtual std::string describe() const = 0;
};

}  // namespace detail

/// Immutable one-dimensional probability law: a continuous part with a
/// density plus an optional point mass at zero (censoring).
///
/// `cdf` is right-continuous and includes the atom. `survival(x)` is
/// Pr(X > x), evaluated without cancellation in the upper tail.
/// `quantile(p)` is the generalized inverse inf{x : cdf(x) >= p} and
/// `upper_quantile(q)` equals quantile(1 - q) but keeps precision for tiny q.
/// Copies share the implementation, so laws are cheap to pass by value and
/// safe to use from several threads at once.
class ScalarLaw {
 public:
  explicit ScalarLaw(std::shared_ptr<const detail::LawImpl> impl);

  double density(double x) const { return impl_->density(x); }
  double log_density(double x) const { return impl_->log_density(x); }
  double cdf(double x) const { return impl_->cdf(x); }
  double survival(double x) const { return impl_->survival(x); }
  double quantile(double p) const;
  double upper_quantile(double q) const;
  double sample(Rng& rng) const { return impl_->sample(rng); }
  double atom_at_zero() const { return impl_->atom_at_zero(); }
  Support support() const { return impl_->support(); }
  std::string describe() const { return impl_->describe(); }

  bool is_continuous() const { return atom_at_zero() == 0.0; }

  /// log cdf(x), accurate in both tails.
  double log_cdf(double x) const;
  /// log survival(x), accurate in both tails.
  double log_survival(double x) const;

 private:
  std::shared_ptr<const detail::LawImpl> impl_;
};

/// Law under each hypothesis.
struct LawPair {
  ScalarLaw h0;
  ScalarLaw h1;

  const ScalarLaw& operator[](Hypothesis h) const { return h == Hypothesis::h0 ? h0 : h1; }
};

/// Gaussian with the given mean and standard deviation.
ScalarLaw gaussian(double mean, double sd);

/// Pareto with scale theta and shape b: density (b/theta)(x/theta)^(-b-1) for x >= theta.
ScalarLaw pareto(double theta, double b);

/// p * N(0, sigma) + (1 - p) * Pareto(theta, b).
ScalarLaw gauss_pareto_mixture(double p, double sigma, double theta, double b);

/// Law of -X.
ScalarLaw negate(const ScalarLaw& law);

/// Law of X after zeroing every value with |x| < theta_c. The mass of the
/// band moves into an atom at zero.
ScalarLaw censor(const ScalarLaw& law, double theta_c);

/// Standard normal helpers shared by the Gaussian law and the policies.
namespace normal {
double cdf(double z);
double survival(double z);
double density(double z);
double quantile(double p);
double upper_quantile(double q);
}  // namespace normal

}  // namespace ordet
