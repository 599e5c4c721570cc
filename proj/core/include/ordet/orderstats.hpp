#pragma once

#include <cstdint>
#include <vector>

#include "ordet/law.hpp"
#include "ordet/pmf.hpp"
#include "ordet/policy.hpp"

namespace ordet {

// Exact finite-n laws of the extremes of n iid transformed samples Z:
//   M+ = max Z_k,  M- = -min Z_k,  M = the Z of largest modulus.
// All densities are evaluated in log space so that n may reach 1e6.
// Laws with an atom at zero are rejected with UnsupportedLaw.

/// h(x) = F(|x|) - F(-|x|) = Pr(|Z| <= |x|).
double modulus_cdf(const ScalarLaw& z, double x);
/// log h(x), accurate when h is close to one.
double log_modulus_cdf(const ScalarLaw& z, double x);
/// Pr(|Z| > t) for t >= 0.
double modulus_survival(const ScalarLaw& z, double t);
/// t >= 0 with Pr(|Z| > t) = q.
double modulus_upper_quantile(const ScalarLaw& z, double q);

double pdf_max(const ScalarLaw& z, std::int64_t n, double x);
double pdf_negmin(const ScalarLaw& z, std::int64_t n, double x);
double pdf_winner(const ScalarLaw& z, std::int64_t n, double x);

double pdf_max(const Policy& policy, std::int64_t n, Hypothesis h, double x);
double pdf_negmin(const Policy& policy, std::int64_t n, Hypothesis h, double x);
double pdf_winner(const Policy& policy, std::int64_t n, Hypothesis h, double x);

/// Density of M_N for random N independent of the data. The N = 0 atom
/// (M = 0, nobody fires) is not part of the density.
double pdf_winner_mixed(const Policy& policy, const SizePmf& size, Hypothesis h, double x);

/// Pr(M_n >= x) for the winner statistic under the given Z-law.
double winner_survival(const ScalarLaw& z, std::int64_t n, double x);

struct ErrorProbabilities {
  double alpha = 0.0;  ///< Pr(M >= gamma; H0)
  double beta = 0.0;   ///< Pr(M < gamma; H1)
};

/// False-alarm and miss probabilities for n sensors by quadrature of the
/// winner density.
ErrorProbabilities error_probs_exact(const Policy& policy, std::int64_t n, double gamma);

/// Mixture over a size pmf. N = 0 contributes through the nobody-fires
/// convention: M = 0 and the decision is H1 iff 0 >= gamma.
ErrorProbabilities error_probs_mixed(const Policy& policy, const SizePmf& size, double gamma);

/// Integration breakpoints for the winner statistic of n samples: 0 and the
/// +- points where Pr(|Z| > t) crosses 10^-k, down to kTailEpsilon / n.
std::vector<double> winner_breakpoints(const ScalarLaw& z, std::int64_t n);

}  // namespace ordet
