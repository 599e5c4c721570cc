#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ordet/error.hpp"
#include "ordet/evt.hpp"
#include "ordet/policy.hpp"

using namespace ordet;

namespace {

// mpmath references (tests/oracle/make_oracles.py).
constexpr double kNormalQuantile099 = 2.3263478740408411;
constexpr double kGumbelA100 = 0.37520436157295173;
constexpr double kLogLog10 = 0.8340324452479558;
constexpr double kTwoPointAlphaTilde = 0.17082039324993691;
constexpr double kTwoPointGumbel0 = 0.25160736220402751;
constexpr double kRefinedNu100 = -1.9997658101835845;

SizeLimitLaw two_point() { return SizeLimitLaw::discrete({1.0, 2.0}, {0.5, 0.5}); }

double gumbel_sup_distance(std::int64_t n) {
  const ScalarLaw z = gaussian(0, 1);
  const NormConstants c = norm_constants(z, n, EvtFamily::gumbel());
  double sup = 0.0;
  for (int i = 0; i <= 600; ++i) {
    const double x = -2.0 + 6.0 * i / 600.0;
    const double fm = std::exp(static_cast<double>(n) * std::log1p(-z.survival(c.a * x + c.b)));
    sup = std::max(sup, std::fabs(fm - limiting_cdf(EvtFamily::gumbel(), x)));
  }
  return sup;
}

}  // namespace

TEST(NormConstants, StandardNormalGumbel) {
  const NormConstants c = norm_constants(gaussian(0, 1), 100, EvtFamily::gumbel());
  EXPECT_NEAR(c.b, kNormalQuantile099, 1e-12);
  EXPECT_NEAR(c.a, kGumbelA100, 1e-12);
}

TEST(NormConstants, ParetoFrechet) {
  const NormConstants c = norm_constants(pareto(1, 1), 100, EvtFamily::frechet(1.0));
  EXPECT_NEAR(c.a, 100.0, 1e-9);
  EXPECT_EQ(c.b, 0.0);
}

TEST(NormConstants, GumbelRatioGrows) {
  double prev = 0.0;
  for (std::int64_t n : {100, 1000, 10000}) {
    const NormConstants c = norm_constants(gaussian(0, 1), n, EvtFamily::gumbel());
    EXPECT_GT(c.b / c.a, prev);
    prev = c.b / c.a;
  }
}

TEST(NormConstants, Errors) {
  EXPECT_THROW(norm_constants(gaussian(0, 1), 1, EvtFamily::gumbel()), InvalidParameter);
  // b_n lands in the censoring gap where the density vanishes.
  EXPECT_THROW(norm_constants(censor(gaussian(0, 1), 1.0), 2, EvtFamily::gumbel()), NumericFailure);
  EXPECT_THROW(EvtFamily::frechet(0.0), InvalidParameter);
}

TEST(LimitingCdf, Values) {
  EXPECT_NEAR(limiting_cdf(EvtFamily::gumbel(), 0.0), std::exp(-1.0), 1e-16);
  EXPECT_EQ(limiting_cdf(EvtFamily::frechet(2.0), 0.0), 0.0);
  EXPECT_EQ(limiting_cdf(EvtFamily::frechet(2.0), -3.0), 0.0);
  EXPECT_NEAR(limiting_cdf(EvtFamily::frechet(1.0), 1.0), std::exp(-1.0), 1e-16);
}

TEST(RandomIndexLimit, DegenerateR) {
  for (double x : {-1.0, 0.0, 2.5}) {
    EXPECT_NEAR(random_index_limit(EvtFamily::gumbel(), SizeLimitLaw::point_mass(1.0), x),
                limiting_cdf(EvtFamily::gumbel(), x), 1e-15);
  }
  EXPECT_NEAR(random_index_limit(EvtFamily::gumbel(), SizeLimitLaw::point_mass(2.0), 0.0), std::exp(-2.0), 1e-15);
}

TEST(RandomIndexLimit, TwoPoint) {
  EXPECT_NEAR(random_index_limit(EvtFamily::gumbel(), two_point(), 0.0), kTwoPointGumbel0, 1e-15);
}

TEST(RandomIndexLimit, UniformMatchesClosedForm) {
  const SizeLimitLaw r = SizeLimitLaw::uniform(0.5, 1.5);
  for (double x : {-1.0, 0.0, 1.0, 3.0}) {
    const double c = std::exp(-x);
    const double exact = (std::exp(-0.5 * c) - std::exp(-1.5 * c)) / c;
    EXPECT_NEAR(random_index_limit(EvtFamily::gumbel(), r, x), exact, 1e-12) << x;
  }
  EXPECT_NEAR(r.mean(), 1.0, 1e-15);
}

TEST(RandomIndexLimit, SampledLawWithinRelativeTolerance) {
  const SizeLimitLaw exact = SizeLimitLaw::uniform(0.5, 1.5);
  const SizeLimitLaw mc = SizeLimitLaw::sampled([](Rng& rng) { return 0.5 + uniform_open01(rng); }, 3);
  for (double x : {0.0, 1.0}) {
    const double e = random_index_limit(EvtFamily::gumbel(), exact, x);
    EXPECT_NEAR(random_index_limit(EvtFamily::gumbel(), mc, x) / e, 1.0, 1e-3);
  }
}

TEST(SizeLimitLaw, RejectsNonPositiveSupport) {
  EXPECT_THROW(SizeLimitLaw::point_mass(0.0), InvalidParameter);
  EXPECT_THROW(SizeLimitLaw::uniform(-1.0, 1.0), InvalidParameter);
  EXPECT_THROW(SizeLimitLaw::discrete({1.0, 2.0}, {0.5}), InvalidParameter);
}

TEST(TailDominance, Classification) {
  const Policy p = gaussian_llr_policy(1, 1, 1);
  EXPECT_EQ(tail_dominance(p.z_law(Hypothesis::h1)), TailDominance::right);
  EXPECT_EQ(tail_dominance(p.z_law(Hypothesis::h0)), TailDominance::left);
  EXPECT_EQ(tail_dominance(gaussian(0, 1)), TailDominance::undetermined);
  EXPECT_EQ(tail_dominance(negate(p.z_law(Hypothesis::h1))), TailDominance::left);
  EXPECT_EQ(to_string(TailDominance::right), "right");
}

TEST(GammaFromAlphaTilde, Values) {
  EXPECT_NEAR(gamma_from_alpha_tilde(EvtFamily::gumbel(), std::exp(-1.0)), 0.0, 1e-15);
  EXPECT_NEAR(gamma_from_alpha_tilde(EvtFamily::frechet(1.0), std::exp(-1.0)), -1.0, 1e-15);
  EXPECT_NEAR(gamma_from_alpha_tilde(EvtFamily::gumbel(), 0.1), kLogLog10, 1e-15);
  EXPECT_THROW(gamma_from_alpha_tilde(EvtFamily::gumbel(), 1.0), InvalidParameter);
  EXPECT_THROW(gamma_from_alpha_tilde(EvtFamily::gumbel(), 0.0), InvalidParameter);
}

TEST(AlphaTildeFromAlpha, Values) {
  EXPECT_NEAR(alpha_tilde_from_alpha(SizeLimitLaw::point_mass(1.0), 0.05), 0.05, 1e-13);
  EXPECT_NEAR(alpha_tilde_from_alpha(SizeLimitLaw::point_mass(2.0), 0.01), 0.1, 1e-13);
  EXPECT_NEAR(alpha_tilde_from_alpha(two_point(), 0.1), kTwoPointAlphaTilde, 1e-13);
  EXPECT_THROW(alpha_tilde_from_alpha(two_point(), 0.0), InvalidParameter);
  EXPECT_THROW(alpha_tilde_from_alpha(two_point(), 1.0), InvalidParameter);
}

TEST(AlphaTildeFromAlpha, MapIsStrictlyIncreasing) {
  const SizeLimitLaw r = SizeLimitLaw::uniform(0.6, 1.4);
  double prev = 0.0;
  for (int i = 1; i < 100; ++i) {
    const double a = i / 100.0;
    const double v = r.expectation([&](double x) { return std::pow(a, x); });
    EXPECT_GT(v, prev);
    prev = v;
  }
  const double at = alpha_tilde_from_alpha(r, 0.1);
  EXPECT_NEAR(r.expectation([&](double x) { return std::pow(at, x); }), 0.1, 1e-12);
}

TEST(ThresholdAsymptotic, Affine) { EXPECT_EQ(threshold_asymptotic({1.0, 0.0}, -1.0), -1.0); }

TEST(ThresholdAsymptotic, DivergesNegatively) {
  const Policy p = gaussian_llr_policy(1, 1, 1);
  const ScalarLaw minus = negate(p.z_law(Hypothesis::h0));
  const double gamma = gamma_from_alpha_tilde(EvtFamily::gumbel(), 0.01);
  double prev = 0.0;
  for (std::int64_t nu : {100, 10000, 1000000}) {
    const double g = threshold_asymptotic(norm_constants(minus, nu, EvtFamily::gumbel()), gamma);
    EXPECT_LT(g, prev) << nu;
    EXPECT_LT(g, 0.0) << nu;
    prev = g;
  }
}

TEST(ThresholdRefined, Values) {
  EXPECT_NEAR(threshold_refined(gaussian(0, 1), 1, 0.5), 0.0, 1e-15);
  EXPECT_NEAR(threshold_refined(gaussian(0, 1), 100, 0.1), kRefinedNu100, 1e-10);
}

TEST(ThresholdRefined, DefiningIdentity) {
  const ScalarLaw z = gaussian_llr_policy(0.5, 0.5, 1).z_law(Hypothesis::h0);
  for (std::int64_t nu : {1, 10, 1000, 100000}) {
    for (double at : {0.01, 0.1, 0.5}) {
      const double g = threshold_refined(z, nu, at);
      EXPECT_NEAR(std::pow(z.survival(g), static_cast<double>(nu)), at, 1e-10);
    }
  }
}

TEST(MissBound, Values) {
  EXPECT_EQ(miss_bound(0.0), 1.0);
  EXPECT_NEAR(miss_bound(-2.0), 0.1353352832366127, 1e-15);
}

TEST(MissBound, GaussianApproximationOverlay) {
  const Policy p = gaussian_llr_policy(1, 1, 1);
  const double g = threshold_refined(p.z_law(Hypothesis::h0), 10000, 0.01);
  const double ratio = miss_bound(g) / miss_bound_gaussian_approx(2.0, 10000.0);
  EXPECT_GT(ratio, 0.1);
  EXPECT_LT(ratio, 10.0);
}

TEST(EvtProperties, GaussianMaximaApproachGumbel) {
  const double d2 = gumbel_sup_distance(100);
  const double d3 = gumbel_sup_distance(1000);
  const double d4 = gumbel_sup_distance(10000);
  EXPECT_GT(d2, d3);
  EXPECT_GT(d3, d4);
}
