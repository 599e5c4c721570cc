#include "ordet/law.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <utility>

#include <boost/math/special_functions/erf.hpp>

#include "ordet/error.hpp"
#include "ordet/numeric.hpp"

namespace ordet {

namespace normal {

double cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double survival(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

double density(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

double quantile(double p) {
  if (p <= 0.0) return -std::numeric_limits<double>::infinity();
  if (p >= 1.0) return std::numeric_limits<double>::infinity();
  if (p > 0.5) return upper_quantile(1.0 - p);
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double upper_quantile(double q) {
  if (q <= 0.0) return std::numeric_limits<double>::infinity();
  if (q >= 1.0) return -std::numeric_limits<double>::infinity();
  if (q > 0.5) return -upper_quantile(1.0 - q);
  return std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * q);
}

}  // namespace normal

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_law(const char* name, std::initializer_list<std::pair<const char*, double>> args) {
  std::ostringstream out;
  out << name << '(';
  bool first = true;
  for (const auto& [key, value] : args) {
    if (!first) out << ", ";
    out << key << '=' << value;
    first = false;
  }
  out << ')';
  return out.str();
}

// Solves mono(x) = target for a monotone function by bracket expansion and
// root finding. `increasing` gives the direction of mono.
double invert_monotone(const RealFunction& mono, double target, bool increasing, Support support) {
  // value(x) >= 0 at the answer's right.
  auto value = [&](double x) { return increasing ? mono(x) - target : target - mono(x); };
  if (std::isfinite(support.lo) && value(support.lo) >= 0.0) return support.lo;
  if (std::isfinite(support.hi) && value(support.hi) <= 0.0) return support.hi;
  double lo = std::isfinite(support.lo) ? support.lo : -1.0;
  double hi = std::isfinite(support.hi) ? support.hi : 1.0;
  if (lo >= hi) hi = lo + 1.0;
  for (double step = 1.0; value(lo) > 0.0; step *= 2.0) {
    lo -= step;
    if (!std::isfinite(lo)) throw NumericFailure("quantile: lower bracket not found", lo);
  }
  for (double step = 1.0; value(hi) < 0.0; step *= 2.0) {
    hi += step;
    if (!std::isfinite(hi)) throw NumericFailure("quantile: upper bracket not found", hi);
  }
  return find_root(value, lo, hi);
}

class GaussianLaw final : public detail::LawImpl {
 public:
  GaussianLaw(double mean, double sd) : mean_(mean), sd_(sd) {}

  double density(double x) const override { return normal::density((x - mean_) / sd_) / sd_; }
  double log_density(double x) const override {
    const double z = (x - mean_) / sd_;
    return -0.5 * z * z - std::log(sd_) - 0.5 * std::log(2.0 * std::numbers::pi);
  }
  double cdf(double x) const override { return normal::cdf((x - mean_) / sd_); }
  double survival(double x) const override { return normal::survival((x - mean_) / sd_); }
  double quantile(double p) const override { return mean_ + sd_ * normal::quantile(p); }
  double upper_quantile(double q) const override { return mean_ + sd_ * normal::upper_quantile(q); }
  double sample(Rng& rng) const override { return std::normal_distribution<double>(mean_, sd_)(rng); }
  Support support() const override { return {-kInf, kInf}; }
  std::string describe() const override {
    return format_law("gaussian", {{"mean", mean_}, {"sd", sd_}});
  }

 private:
  double mean_;
  double sd_;
};

class ParetoLaw final : public detail::LawImpl {
 public:
  ParetoLaw(double theta, double b) : theta_(theta), b_(b) {}

  double density(double x) const override {
    return x < theta_ ? 0.0 : (b_ / theta_) * std::pow(x / theta_, -b_ - 1.0);
  }
  double cdf(double x) const override { return x < theta_ ? 0.0 : -std::expm1(-b_ * std::log(x / theta_)); }
  double survival(double x) const override { return x < theta_ ? 1.0 : std::pow(x / theta_, -b_); }
  double quantile(double p) const override {
    if (p <= 0.0) return theta_;
    if (p >= 1.0) return kInf;
    return theta_ * std::exp(-std::log1p(-p) / b_);
  }
  double upper_quantile(double q) const override {
    if (q >= 1.0) return theta_;
    if (q <= 0.0) return kInf;
    return theta_ * std::pow(q, -1.0 / b_);
  }
  double sample(Rng& rng) const override { return upper_quantile(uniform_open01(rng)); }
  Support support() const override { return {theta_, kInf}; }
  std::string describe() const override {
    return format_law("pareto", {{"theta", theta_}, {"b", b_}});
  }

 private:
  double theta_;
  double b_;
};

class GaussParetoMixtureLaw final : public detail::LawImpl {
 public:
  GaussParetoMixtureLaw(double p, double sigma, double theta, double b)
      : p_(p), sigma_(sigma), theta_(theta), b_(b), gauss_(0.0, sigma), pareto_(theta, b) {}

  double density(double x) const override {
    return p_ * gauss_.density(x) + (1.0 - p_) * pareto_.density(x);
  }
  double cdf(double x) const override { return p_ * gauss_.cdf(x) + (1.0 - p_) * pareto_.cdf(x); }
  double survival(double x) const override {
    return p_ * gauss_.survival(x) + (1.0 - p_) * pareto_.survival(x);
  }
  double quantile(double p) const override {
    if (p <= 0.0) return -kInf;
    if (p >= 1.0) return kInf;
    if (p > 0.5) return upper_quantile(1.0 - p);
    return invert_monotone([this](double x) { return cdf(x); }, p, true, support());
  }
  double upper_quantile(double q) const override {
    if (q <= 0.0) return kInf;
    if (q >= 1.0) return -kInf;
    if (q > 0.5) return quantile(1.0 - q);
    return invert_monotone([this](double x) { return survival(x); }, q, false, support());
  }
  double sample(Rng& rng) const override {
    const double u = uniform_open01(rng);
    return u < p_ ? gauss_.sample(rng) : pareto_.sample(rng);
  }
  Support support() const override { return {-kInf, kInf}; }
  std::string describe() const override {
    return format_law("gauss_pareto_mixture", {{"p", p_}, {"sigma", sigma_}, {"theta", theta_}, {"b", b_}});
  }

 private:
  double p_;
  double sigma_;
  double theta_;
  double b_;
  GaussianLaw gauss_;
  ParetoLaw pareto_;
};

class NegatedLaw final : public detail::LawImpl {
 public:
  explicit NegatedLaw(ScalarLaw inner) : inner_(std::move(inner)) {}

  double density(double x) const override { return inner_.density(-x); }
  double log_density(double x) const override { return inner_.log_density(-x); }
  double cdf(double x) const override {
    return inner_.survival(-x) + (x == 0.0 ? inner_.atom_at_zero() : 0.0);
  }
  double survival(double x) const override {
    return inner_.cdf(-x) - (x == 0.0 ? inner_.atom_at_zero() : 0.0);
  }
  double quantile(double p) const override {
    if (in_atom_band(p)) return 0.0;
    return -inner_.upper_quantile(p);
  }
  double upper_quantile(double q) const override {
    if (in_atom_band(1.0 - q)) return 0.0;
    return -inner_.quantile(q);
  }
  double sample(Rng& rng) const override { return -inner_.sample(rng); }
  double atom_at_zero() const override { return inner_.atom_at_zero(); }
  Support support() const override {
    const Support s = inner_.support();
    return {-s.hi, -s.lo};
  }
  std::string describe() const override { return "negate(" + inner_.describe() + ")"; }

 private:
  bool in_atom_band(double p) const {
    const double atom = inner_.atom_at_zero();
    if (atom == 0.0) return false;
    const double below = inner_.survival(0.0);  // Pr(-X < 0)
    return p > below && p <= below + atom;
  }

  ScalarLaw inner_;
};

class CensoredLaw final : public detail::LawImpl {
 public:
  CensoredLaw(ScalarLaw inner, double theta_c)
      : inner_(std::move(inner)),
        theta_c_(theta_c),
        cdf_lo_(inner_.cdf(-theta_c)),
        cdf_hi_(inner_.cdf(theta_c)),
        sf_lo_(inner_.survival(-theta_c)),
        sf_hi_(inner_.survival(theta_c)),
        atom_(std::max(0.0, 1.0 - cdf_lo_ - sf_hi_)) {}

  double density(double x) const override {
    return std::abs(x) >= theta_c_ ? inner_.density(x) : 0.0;
  }
  double log_density(double x) const override {
    return std::abs(x) >= theta_c_ ? inner_.log_density(x) : -kInf;
  }
  double cdf(double x) const override {
    if (x < -theta_c_ || x >= theta_c_) return inner_.cdf(x);
    return x < 0.0 ? cdf_lo_ : cdf_hi_;
  }
  double survival(double x) const override {
    if (x < -theta_c_ || x >= theta_c_) return inner_.survival(x);
    return x < 0.0 ? sf_lo_ : sf_hi_;
  }
  double quantile(double p) const override {
    if (p > cdf_lo_ && p <= cdf_hi_) return 0.0;
    return inner_.quantile(p);
  }
  double upper_quantile(double q) const override {
    if (q >= sf_hi_ && q < sf_lo_) return 0.0;
    return inner_.upper_quantile(q);
  }
  double sample(Rng& rng) const override {
    const double x = inner_.sample(rng);
    return std::abs(x) < theta_c_ ? 0.0 : x;
  }
  double atom_at_zero() const override { return atom_; }
  Support support() const override { return inner_.support(); }
  std::string describe() const override {
    std::ostringstream out;
    out << "censor(" << inner_.describe() << ", theta_c=" << theta_c_ << ')';
    return out.str();
  }

 private:
  ScalarLaw inner_;
  double theta_c_;
  double cdf_lo_;
  double cdf_hi_;
  double sf_lo_;
  double sf_hi_;
  double atom_;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidParameter(message);
}

}  // namespace

namespace detail {

double LawImpl::log_density(double x) const { return std::log(density(x)); }

double LawImpl::survival(double x) const { return 1.0 - cdf(x); }

double LawImpl::quantile(double p) const {
  const Support s = support();
  if (p <= 0.0) return s.lo;
  if (p >= 1.0) return s.hi;
  const double atom = atom_at_zero();
  if (atom > 0.0) {
    const double at_zero = cdf(0.0);
    if (p > at_zero - atom && p <= at_zero) return 0.0;
  }
  return invert_monotone([this](double x) { return cdf(x); }, p, true, s);
}

double LawImpl::upper_quantile(double q) const {
  const Support s = support();
  if (q <= 0.0) return s.hi;
  if (q >= 1.0) return s.lo;
  const double atom = atom_at_zero();
  if (atom > 0.0) {
    const double above = survival(0.0);
    if (q >= above && q < above + atom) return 0.0;
  }
  return invert_monotone([this](double x) { return survival(x); }, q, false, s);
}

double LawImpl::sample(Rng& rng) const { return quantile(uniform_open01(rng)); }

}  // namespace detail

ScalarLaw::ScalarLaw(std::shared_ptr<const detail::LawImpl> impl) : impl_(std::move(impl)) {
  if (!impl_) throw InvalidParameter("ScalarLaw: null implementation");
}

double ScalarLaw::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("quantile: probability outside [0, 1]");
  return impl_->quantile(p);
}

double ScalarLaw::upper_quantile(double q) const {
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidParameter("upper_quantile: probability outside [0, 1]");
  return impl_->upper_quantile(q);
}

double ScalarLaw::log_cdf(double x) const {
  const double c = cdf(x);
  if (c < 0.5) return std::log(c);
  return std::log1p(-survival(x));
}

double ScalarLaw::log_survival(double x) const {
  const double s = survival(x);
  if (s < 0.5) return std::log(s);
  return std::log1p(-cdf(x));
}

ScalarLaw gaussian(double mean, double sd) {
  require(std::isfinite(mean), "gaussian: mean must be finite");
  require(std::isfinite(sd) && sd > 0.0, "gaussian: sd must be positive");
  return ScalarLaw(std::make_shared<GaussianLaw>(mean, sd));
}

ScalarLaw pareto(double theta, double b) {
  require(std::isfinite(theta) && theta > 0.0, "pareto: theta must be positive");
  require(std::isfinite(b) && b > 0.0, "pareto: b must be positive");
  return ScalarLaw(std::make_shared<ParetoLaw>(theta, b));
}

ScalarLaw gauss_pareto_mixture(double p, double sigma, double theta, double b) {
  require(p > 0.0 && p < 1.0, "gauss_pareto_mixture: p must lie in (0, 1)");
  require(std::isfinite(sigma) && sigma > 0.0, "gauss_pareto_mixture: sigma must be positive");
  require(std::isfinite(theta) && theta > 0.0, "gauss_pareto_mixture: theta must be positive");
  require(std::isfinite(b) && b > 0.0, "gauss_pareto_mixture: b must be positive");
  return ScalarLaw(std::make_shared<GaussParetoMixtureLaw>(p, sigma, theta, b));
}

ScalarLaw negate(const ScalarLaw& law) { return ScalarLaw(std::make_shared<NegatedLaw>(law)); }

ScalarLaw censor(const ScalarLaw& law, double theta_c) {
  require(std::isfinite(theta_c) && theta_c > 0.0, "censor: theta_c must be positive");
  if (!law.is_continuous()) throw UnsupportedLaw("censor: input law must be continuous");
  return ScalarLaw(std::make_shared<CensoredLaw>(law, theta_c));
}

}  // namespace ordet
