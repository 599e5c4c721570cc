#include "ordet/orderstats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ordet/error.hpp"
#include "ordet/numeric.hpp"

namespace ordet {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_continuous(const ScalarLaw& z, const char* who) {
  if (!z.is_continuous()) {
    throw UnsupportedLaw(std::string(who) +
                         ": law has an atom at zero; exact integration is unavailable, use "
                         "Monte Carlo estimation");
  }
}

void require_size(std::int64_t n, const char* who) {
  if (n < 1) throw InvalidParameter(std::string(who) + ": n must be >= 1");
}

// n * exp((n - 1) * log_base + log_f), with base^0 = 1 even when base = 0.
double order_density(std::int64_t n, double log_base, double log_f) {
  if (n == 1) return std::exp(log_f);
  if (log_base == kNegInf || log_f == kNegInf) return 0.0;
  return std::exp(std::log(static_cast<double>(n)) + static_cast<double>(n - 1) * log_base + log_f);
}

}  // namespace

double modulus_survival(const ScalarLaw& z, double t) {
  const double a = std::abs(t);
  return z.survival(a) + z.cdf(-a);
}

double modulus_cdf(const ScalarLaw& z, double x) {
  const double a = std::abs(x);
  const double s = modulus_survival(z, a);
  if (s < 0.5) return 1.0 - s;
  return std::max(0.0, z.cdf(a) - z.cdf(-a));
}

double log_modulus_cdf(const ScalarLaw& z, double x) {
  const double a = std::abs(x);
  const double s = modulus_survival(z, a);
  if (s < 0.5) return std::log1p(-s);
  const double h = z.cdf(a) - z.cdf(-a);
  return h > 0.0 ? std::log(h) : kNegInf;
}

double modulus_upper_quantile(const ScalarLaw& z, double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw InvalidParameter("modulus_upper_quantile: q must lie in (0, 1)");
  }
  // Pr(|Z| > t) >= q at the larger one-sided q-quantile, <= q at the q/2 ones.
  const double lo = std::max({0.0, z.upper_quantile(q), -z.quantile(q)});
  const double hi = std::max({0.0, z.upper_quantile(0.5 * q), -z.quantile(0.5 * q)});
  auto g = [&](double t) { return modulus_survival(z, t) - q; };
  const double glo = g(lo);
  const double ghi = g(hi);
  if (glo <= 0.0) return lo;
  if (ghi >= 0.0) return hi;
  return find_root(g, lo, hi);
}

std::vector<double> winner_breakpoints(const ScalarLaw& z, std::int64_t n) {
  require_size(n, "winner_breakpoints");
  const double floor_q = kTailEpsilon / static_cast<double>(n);
  std::vector<double> positive;
  for (double q = 0.1; q > floor_q; q *= 0.1) positive.push_back(modulus_upper_quantile(z, q));
  positive.push_back(modulus_upper_quantile(z, floor_q));

  std::vector<double> points;
  points.reserve(2 * positive.size() + 1);
  for (auto it = positive.rbegin(); it != positive.rend(); ++it) points.push_back(-*it);
  points.push_back(0.0);
  points.insert(points.end(), positive.begin(), positive.end());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

double pdf_max(const ScalarLaw& z, std::int64_t n, double x) {
  require_continuous(z, "pdf_max");
  require_size(n, "pdf_max");
  return order_density(n, z.log_cdf(x), z.log_density(x));
}

double pdf_negmin(const ScalarLaw& z, std::int64_t n, double x) {
  require_continuous(z, "pdf_negmin");
  require_size(n, "pdf_negmin");
  return order_density(n, z.log_survival(-x), z.log_density(-x));
}

double pdf_winner(const ScalarLaw& z, std::int64_t n, double x) {
  require_continuous(z, "pdf_winner");
  require_size(n, "pdf_winner");
  return order_density(n, log_modulus_cdf(z, x), z.log_density(x));
}

double pdf_max(const Policy& policy, std::int64_t n, Hypothesis h, double x) {
  return pdf_max(policy.z_law(h), n, x);
}

double pdf_negmin(const Policy& policy, std::int64_t n, Hypothesis h, double x) {
  return pdf_negmin(policy.z_law(h), n, x);
}

double pdf_winner(const Policy& policy, std::int64_t n, Hypothesis h, double x) {
  return pdf_winner(policy.z_law(h), n, x);
}

double pdf_winner_mixed(const Policy& policy, const SizePmf& size, Hypothesis h, double x) {
  const ScalarLaw& z = policy.z_law(h);
  require_continuous(z, "pdf_winner_mixed");
  const double log_h = log_modulus_cdf(z, x);
  const double log_f = z.log_density(x);
  double total = 0.0;
  for (std::int64_t n = std::max<std::int64_t>(size.first, 1); n <= size.last(); ++n) {
    const double w = size(n);
    if (w > 0.0) total += w * order_density(n, log_h, log_f);
  }
  return total;
}

double winner_survival(const ScalarLaw& z, std::int64_t n, double x) {
  require_continuous(z, "winner_survival");
  require_size(n, "winner_survival");
  const std::vector<double> bp = winner_breakpoints(z, n);
  if (x >= bp.back()) return 0.0;
  std::vector<double> panel{std::max(x, bp.front())};
  for (double p : bp) {
    if (p > panel.front()) panel.push_back(p);
  }
  return quadrature([&](double t) { return pdf_winner(z, n, t); }, panel);
}

ErrorProbabilities error_probs_exact(const Policy& policy, std::int64_t n, double gamma) {
  const ScalarLaw& z0 = policy.z_law(Hypothesis::h0);
  const ScalarLaw& z1 = policy.z_law(Hypothesis::h1);
  require_continuous(z0, "error_probs_exact");
  require_continuous(z1, "error_probs_exact");
  if (n < 0) throw InvalidParameter("error_probs_exact: n must be >= 0");
  if (n == 0) {
    const bool h1 = local_decision(0.0, gamma) == Hypothesis::h1;
    return {h1 ? 1.0 : 0.0, h1 ? 0.0 : 1.0};
  }

  ErrorProbabilities out;
  out.alpha = winner_survival(z0, n, gamma);

  const std::vector<double> bp = winner_breakpoints(z1, n);
  if (gamma > bp.front()) {
    std::vector<double> panel;
    for (double p : bp) {
      if (p < gamma) panel.push_back(p);
    }
    panel.push_back(std::min(gamma, bp.back()));
    out.beta = quadrature([&](double t) { return pdf_winner(z1, n, t); }, panel);
  }
  out.alpha = std::clamp(out.alpha, 0.0, 1.0);
  out.beta = std::clamp(out.beta, 0.0, 1.0);
  return out;
}

ErrorProbabilities error_probs_mixed(const Policy& policy, const SizePmf& size, double gamma) {
  const double total = size.total();
  if (size.mass.empty() || size.first < 0 || !(total >= 1.0 - 1e-10 && total <= 1.0 + 1e-9)) {
    throw InvalidInput("error_probs_mixed: size pmf must be supported on n >= 0 and carry mass "
                       "within 1e-10 of one (got " +
                       std::to_string(total) + ")");
  }
  for (double m : size.mass) {
    if (!(m >= 0.0)) throw InvalidInput("error_probs_mixed: negative pmf entry");
  }
  ErrorProbabilities out;
  for (std::int64_t n = size.first; n <= size.last(); ++n) {
    const double w = size(n);
    if (w == 0.0) continue;
    const ErrorProbabilities e = error_probs_exact(policy, n, gamma);
    out.alpha += w * e.alpha;
    out.beta += w * e.beta;
  }
  return out;
}

}  // namespace ordet
