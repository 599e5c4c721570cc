#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ordet/error.hpp"
#include "ordet/policy.hpp"
#include "ordet/random.hpp"
#include "support/stats.hpp"

using namespace ordet;

namespace {

LawPair shift_pair(double theta0, double theta1, double sigma) {
  return {gaussian(-theta0, sigma), gaussian(theta1, sigma)};
}

std::vector<std::size_t> firing_order(std::vector<double> z) {
  std::vector<std::size_t> order;
  std::vector<std::size_t> ids(z.size());
  std::iota(ids.begin(), ids.end(), 1);
  while (!z.empty()) {
    const DetectionOutcome out = decide(z, 0.0);
    order.push_back(ids[out.winner_index - 1]);
    z.erase(z.begin() + static_cast<std::ptrdiff_t>(out.winner_index - 1));
    ids.erase(ids.begin() + static_cast<std::ptrdiff_t>(out.winner_index - 1));
  }
  return order;
}

}  // namespace

TEST(IdentityPolicy, TransformIsIdentity) {
  const Policy p = identity_policy(shift_pair(1, 1, 1));
  EXPECT_EQ(p.transform(3.7), 3.7);
  EXPECT_EQ(p.kind(), PolicyKind::identity);
  EXPECT_TRUE(p.is_continuous());
}

TEST(IdentityPolicy, ZLawIsXLaw) {
  const Policy p = identity_policy(shift_pair(1, 1, 1));
  for (int i = 0; i <= 50; ++i) {
    const double x = -5.0 + 0.2 * i;
    EXPECT_EQ(p.z_law(Hypothesis::h0).cdf(x), p.x_law(Hypothesis::h0).cdf(x));
  }
}

TEST(IdentityPolicy, FiringOrderByDecreasingModulus) {
  EXPECT_EQ(firing_order({0.5, -2.0, 1.0}), (std::vector<std::size_t>{2, 3, 1}));
}

TEST(LlrPolicy, SymmetricUnitCase) {
  const Policy p = gaussian_llr_policy(1.0, 1.0, 1.0);
  EXPECT_EQ(p.kind(), PolicyKind::loglik);
  const ScalarLaw oracle = gaussian(2.0, 2.0);
  for (int i = 0; i <= 40; ++i) {
    const double x = -4.0 + 0.2 * i;
    EXPECT_NEAR(p.transform(x), 2.0 * x, 1e-15);
    EXPECT_NEAR(p.z_law(Hypothesis::h1).cdf(3 * x), oracle.cdf(3 * x), 1e-15);
    EXPECT_NEAR(p.z_law(Hypothesis::h1).density(3 * x), oracle.density(3 * x), 1e-15);
  }
}

TEST(LlrPolicy, ZLawsMirror) {
  const Policy p = gaussian_llr_policy(0.4, 1.3, 0.9);
  for (int i = 0; i <= 60; ++i) {
    const double x = -6.0 + 0.2 * i;
    EXPECT_NEAR(p.z_law(Hypothesis::h1).density(x), p.z_law(Hypothesis::h0).density(-x), 1e-15);
  }
}

TEST(LlrPolicy, SymmetricShiftMapsZeroToZero) { EXPECT_EQ(gaussian_llr_policy(0.7, 0.7, 1.3).transform(0.0), 0.0); }

TEST(LlrPolicy, TransformIsLogLikelihoodRatio) {
  const double t0 = 0.3, t1 = 1.2, s = 0.8;
  const Policy p = gaussian_llr_policy(t0, t1, s);
  const ScalarLaw f0 = gaussian(-t0, s);
  const ScalarLaw f1 = gaussian(t1, s);
  for (int i = 0; i <= 100; ++i) {
    const double x = -5.0 + 0.1 * i;
    EXPECT_NEAR(p.transform(x), f1.log_density(x) - f0.log_density(x), 1e-10) << x;
  }
}

TEST(LlrPolicy, RejectsBadParameters) {
  EXPECT_THROW(gaussian_llr_policy(-0.1, 1.0, 1.0), InvalidParameter);
  EXPECT_THROW(gaussian_llr_policy(1.0, 0.0, 1.0), InvalidParameter);
  EXPECT_THROW(gaussian_llr_policy(1.0, 1.0, 0.0), InvalidParameter);
}

TEST(CensoringPolicy, Transform) {
  const Policy p = censoring_policy(shift_pair(1, 1, 1), 1.0);
  EXPECT_EQ(p.transform(0.5), 0.0);
  EXPECT_EQ(p.transform(-1.5), -1.5);
  EXPECT_EQ(p.transform(1.0), 1.0);
  EXPECT_FALSE(p.is_continuous());
}

TEST(CensoringPolicy, AtomMass) {
  const Policy p = censoring_policy({gaussian(0, 1), gaussian(0, 1)}, 1.0);
  EXPECT_NEAR(p.z_law(Hypothesis::h0).atom_at_zero(), 0.6826894921370859, 1e-14);
}

TEST(CensoringPolicy, RejectsBadThreshold) {
  EXPECT_THROW(censoring_policy(shift_pair(1, 1, 1), 0.0), InvalidParameter);
}

TEST(PolicyPushforward, LlrZLawMatchesTransformedSamples) {
  const Policy p = gaussian_llr_policy(0.5, 1.0, 1.2);
  for (Hypothesis h : kHypotheses) {
    std::vector<double> z(100000);
    Rng rng = make_stream(11, static_cast<std::uint64_t>(h));
    for (double& v : z) v = p.transform(p.x_law(h).sample(rng));
    const double d = testkit::ks_statistic(z, [&](double x) { return p.z_law(h).cdf(x); });
    EXPECT_LT(d, testkit::ks_critical_99(z.size()));
  }
}

TEST(PolicyPushforward, CensoredZLawMatchesTransformedSamples) {
  const ScalarLaw w = gauss_pareto_mixture(0.5, 1.0, 1.0, 1.0);
  const Policy p = censoring_policy({negate(w), w}, 1.0);
  for (Hypothesis h : kHypotheses) {
    const ScalarLaw& z = p.z_law(h);
    std::vector<double> s(100000);
    Rng rng = make_stream(12, static_cast<std::uint64_t>(h));
    for (double& v : s) v = p.transform(p.x_law(h).sample(rng));
    const double d = testkit::ks_statistic_mixed(
        s, [&](double x) { return z.cdf(x); },
        [&](double x) { return x == 0.0 ? z.cdf(0.0) - z.atom_at_zero() : z.cdf(x); });
    EXPECT_LT(d, testkit::ks_critical_99(s.size()));
  }
}

TEST(Decide, LargestModulusWins) {
  const std::vector<double> z = {0.5, -2.0, 1.0};
  const DetectionOutcome out = decide(z, 0.0);
  EXPECT_EQ(out.winner_index, 2u);
  EXPECT_EQ(out.winner_statistic, -2.0);
  EXPECT_EQ(out.decision, Hypothesis::h0);
  EXPECT_EQ(out.n_active, 3u);
  EXPECT_FALSE(out.all_censored);
  EXPECT_DOUBLE_EQ(out.firing_time, 0.5);
}

TEST(Decide, OffsetsOverrideOrdering) {
  const std::vector<double> z = {0.5, -2.0, 1.0};
  const std::vector<double> u = {0.0, 1.0, 0.0};  // times 2, 1.5, 1
  const DetectionOutcome out = decide(z, 0.0, u);
  EXPECT_EQ(out.winner_index, 3u);
  EXPECT_EQ(out.winner_statistic, 1.0);
  EXPECT_EQ(out.decision, Hypothesis::h1);
  EXPECT_DOUBLE_EQ(out.firing_time, 1.0);
}

TEST(Decide, EmptyNetworkAppliesRuleToZero) {
  const DetectionOutcome below = decide(std::vector<double>{}, -0.5);
  EXPECT_TRUE(below.all_censored);
  EXPECT_EQ(below.winner_statistic, 0.0);
  EXPECT_EQ(below.winner_index, 0u);
  EXPECT_EQ(below.decision, Hypothesis::h1);
  EXPECT_TRUE(std::isinf(below.firing_time));
  EXPECT_EQ(decide(std::vector<double>{}, 0.5).decision, Hypothesis::h0);
}

TEST(Decide, AllCensored) {
  const std::vector<double> z = {0.0, 0.0};
  const DetectionOutcome out = decide(z, 0.1);
  EXPECT_TRUE(out.all_censored);
  EXPECT_TRUE(std::isinf(out.firing_time));
  EXPECT_EQ(out.decision, Hypothesis::h0);
  const std::vector<double> u = {-5.0, -5.0};
  EXPECT_TRUE(decide(z, 0.1, u).all_censored);
}

TEST(Decide, TiesGoToLowestIndex) {
  EXPECT_EQ(decide(std::vector<double>{1.0, -1.0}, 0.0).winner_index, 1u);
  EXPECT_EQ(decide(std::vector<double>{0.2, -3.0, 3.0}, 0.0).winner_index, 2u);
}

TEST(Decide, BoundaryDecidesH1) {
  EXPECT_EQ(decide(std::vector<double>{-1.5}, -1.5).decision, Hypothesis::h1);
  EXPECT_EQ(local_decision(2.0, 2.0), Hypothesis::h1);
  EXPECT_EQ(local_decision(std::nextafter(2.0, 0.0), 2.0), Hypothesis::h0);
}

TEST(Decide, CensoredNodesNeverFire) {
  const std::vector<double> z = {0.0, 0.1};
  const std::vector<double> u = {-100.0, 0.0};
  EXPECT_EQ(decide(z, 0.0, u).winner_index, 2u);
}

TEST(Decide, NegativeFiringTimesAreKept) {
  const std::vector<double> z = {10.0, 1.0};
  const std::vector<double> u = {-1.0, 0.0};
  const DetectionOutcome out = decide(z, 0.0, u);
  EXPECT_EQ(out.winner_index, 1u);
  EXPECT_DOUBLE_EQ(out.firing_time, -0.9);
}

TEST(Decide, OffsetLengthMismatch) {
  const std::vector<double> z = {1.0, 2.0};
  const std::vector<double> u = {0.0};
  EXPECT_THROW(decide(z, 0.0, u), InvalidInput);
}

TEST(DecideProperties, PermutationInvariance) {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> nd(0.0, 2.0);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> z(1 + rep % 17);
    for (double& v : z) v = nd(gen);
    const DetectionOutcome ref = decide(z, 0.3);
    std::vector<std::size_t> perm(z.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<double> zp(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) zp[i] = z[perm[i]];
    const DetectionOutcome out = decide(zp, 0.3);
    EXPECT_EQ(out.winner_statistic, ref.winner_statistic);
    EXPECT_EQ(out.decision, ref.decision);
    EXPECT_EQ(perm[out.winner_index - 1], ref.winner_index - 1);
  }
}

TEST(DecideProperties, ScaleInvariance) {
  std::mt19937_64 gen(6);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> z(1 + rep % 11);
    for (double& v : z) v = nd(gen);
    const double c = scale(gen);
    std::vector<double> zc = z;
    for (double& v : zc) v *= c;
    const DetectionOutcome a = decide(z, 0.25);
    const DetectionOutcome b = decide(zc, 0.25 * c);
    EXPECT_EQ(a.winner_index, b.winner_index);
    EXPECT_EQ(a.decision, b.decision);
  }
}
