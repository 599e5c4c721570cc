#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/distributions/poisson.hpp>
#include <gtest/gtest.h>

#include "ordet/error.hpp"
#include "ordet/network.hpp"
#include "ordet/random.hpp"
#include "support/stats.hpp"

using namespace ordet;

namespace {

EnergyStopped energy_model(std::int64_t nu, double theta) {
  return EnergyStopped{nu, {gaussian(-theta, 1.0), gaussian(theta, 1.0)}, gaussian(0.0, 1.0), {}};
}

Policy llr_for(double theta) { return gaussian_llr_policy(theta, theta, std::sqrt(2.0)); }

struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

template <class Draw>
Moments moments(int trials, Draw&& draw) {
  double s = 0.0, s2 = 0.0;
  for (int t = 0; t < trials; ++t) {
    const double v = draw(t);
    s += v;
    s2 += v * v;
  }
  const double m = s / trials;
  return {m, (s2 - trials * m * m) / (trials - 1)};
}

}  // namespace

TEST(DrawSize, DeterministicIsConstant) {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(draw_size(Deterministic{7}, Hypothesis::h1, rng), 7);
}

TEST(DrawSize, ZeroDeltaIsPoisson) {
  constexpr int kTrials = 200000;
  const Moments m = moments(kTrials, [](int t) {
    Rng rng = make_stream(3, 0, static_cast<std::uint64_t>(t));
    return static_cast<double>(draw_size(MixedPoisson{40, 0.6, 0.0}, Hypothesis::h0, rng));
  });
  EXPECT_NEAR(m.mean, 40.0, 3.0 * std::sqrt(40.0 / kTrials));
  EXPECT_NEAR(m.var / 40.0, 1.0, 0.02);
}

TEST(DrawSize, MixedPoissonMeanIsNu) {
  constexpr int kTrials = 1000000;
  constexpr double kNu = 200.0;
  const Moments m = moments(kTrials, [](int t) {
    Rng rng = make_stream(4, 0, static_cast<std::uint64_t>(t));
    return static_cast<double>(draw_size(MixedPoisson{200, 0.5, 0.5}, Hypothesis::h1, rng));
  });
  // Var N = nu + nu^2 Var R, Var R = (delta / eq)^2 / 12.
  const double var = kNu + kNu * kNu / 12.0;
  EXPECT_NEAR(m.mean, kNu, 3.0 * std::sqrt(var / kTrials));
  EXPECT_NEAR(m.var / var, 1.0, 0.02);
}

TEST(DrawSize, EnergyStoppedNeedsDrawNetwork) {
  Rng rng(1);
  EXPECT_THROW(draw_size(energy_model(10, 1.0), Hypothesis::h0, rng), InvalidInput);
}

TEST(StoppingIndex, ForcedUnitStates) {
  const std::vector<double> ones(10, 1.0);
  EXPECT_EQ(stopping_index(ones, 2.5), 3);
  EXPECT_EQ(stopping_index(ones, 2.0), 3);  // strict crossing
  EXPECT_EQ(stopping_index(ones, 20.0), 0);
  const EnergyAccumulator abs_sum = [](double run, double s) { return run + std::fabs(s); };
  const std::vector<double> s = {-1.0, 0.5, 2.0};
  EXPECT_EQ(stopping_index(s, 1.4, abs_sum), 2);
}

TEST(DrawNetwork, EnergyStoppedCrossesOnce) {
  const EnergyStopped model = energy_model(50, 1.0);
  for (int t = 0; t < 200; ++t) {
    Rng rng = make_stream(5, 1, static_cast<std::uint64_t>(t));
    const SensorDraw d = draw_network(model, llr_for(1.0), Hypothesis::h1, 0.0, rng);
    ASSERT_EQ(d.x_samples.size(), d.s_samples.size());
    ASSERT_EQ(static_cast<std::int64_t>(d.x_samples.size()), d.n_active);
    EXPECT_EQ(stopping_index(d.s_samples, 50.0), d.n_active);
    EXPECT_TRUE(d.offsets.empty());
  }
}

TEST(DrawNetwork, RenewalMeanOfStoppedSize) {
  constexpr int kTrials = 10000;
  constexpr std::int64_t kNu = 10000;
  for (double theta : {0.0, 1.0}) {
    const EnergyStopped model = energy_model(kNu, theta);
    const Moments m = moments(kTrials, [&](int t) {
      Rng rng = make_stream(6, 0, static_cast<std::uint64_t>(t));
      return static_cast<double>(draw_network(model, llr_for(std::max(theta, 0.5)), Hypothesis::h0, 0.0, rng).n_active) /
             static_cast<double>(kNu);
    });
    EXPECT_NEAR(m.mean, 1.0 / (theta * theta + 1.0), 3.0 * std::sqrt(m.var / kTrials)) << theta;
  }
}

TEST(DrawNetwork, StoppedSizeConcentrates) {
  // Both the bias of E(N)/nu and the spread of N/nu shrink as nu grows.
  const double limit = 1.0 / 1.5;
  double prev_bias = INFINITY, prev_sd = INFINITY;
  for (std::int64_t nu : {30, 300, 3000}) {
    const EnergyStopped model = energy_model(nu, std::sqrt(0.5));
    const Moments m = moments(4000, [&](int t) {
      Rng rng = make_stream(7, static_cast<std::uint64_t>(nu), static_cast<std::uint64_t>(t));
      return static_cast<double>(draw_network(model, llr_for(std::sqrt(0.5)), Hypothesis::h1, 0.0, rng).n_active) /
             static_cast<double>(nu);
    });
    EXPECT_LT(std::fabs(m.mean - limit), prev_bias) << nu;
    EXPECT_LT(std::sqrt(m.var), prev_sd) << nu;
    prev_bias = std::fabs(m.mean - limit);
    prev_sd = std::sqrt(m.var);
  }
}

TEST(DrawNetwork, OffsetsOnlyWhenRequested) {
  const Policy p = gaussian_llr_policy(1, 1, 1);
  Rng rng(9);
  const SensorDraw plain = draw_network(Deterministic{20}, p, Hypothesis::h0, 0.0, rng);
  EXPECT_TRUE(plain.offsets.empty());
  EXPECT_TRUE(plain.s_samples.empty());
  EXPECT_EQ(plain.x_samples.size(), 20u);
  const SensorDraw jittered = draw_network(Deterministic{2000}, p, Hypothesis::h0, 0.4, rng);
  ASSERT_EQ(jittered.offsets.size(), 2000u);
  EXPECT_LT(*std::max_element(jittered.offsets.begin(), jittered.offsets.end()), 0.2);
  EXPECT_GT(*std::min_element(jittered.offsets.begin(), jittered.offsets.end()), -0.2);
  EXPECT_THROW(draw_network(Deterministic{2}, p, Hypothesis::h0, -1.0, rng), InvalidParameter);
}

TEST(DrawNetwork, SamplesFollowXLaw) {
  const Policy p = gaussian_llr_policy(0.5, 1.0, 1.0);
  Rng rng(10);
  const SensorDraw d = draw_network(Deterministic{100000}, p, Hypothesis::h1, 0.0, rng);
  const double ks = testkit::ks_statistic(d.x_samples, [&](double x) { return p.x_law(Hypothesis::h1).cdf(x); });
  EXPECT_LT(ks, testkit::ks_critical_99(d.x_samples.size()));
}

TEST(SizePmf, DeterministicPointMass) {
  const SizePmf pmf = size_pmf(Deterministic{5});
  EXPECT_EQ(pmf(5), 1.0);
  EXPECT_EQ(pmf(4), 0.0);
  EXPECT_EQ(pmf.total(), 1.0);
}

TEST(SizePmf, ZeroDeltaIsPoissonPmf) {
  const SizePmf pmf = size_pmf(MixedPoisson{50, 0.7, 0.0});
  const boost::math::poisson_distribution<double> ref(50.0);
  for (std::int64_t n : {0, 10, 35, 50, 51, 80, 120}) {
    EXPECT_NEAR(pmf(n), boost::math::pdf(ref, static_cast<double>(n)), 1e-14) << n;
  }
  EXPECT_GE(pmf.total(), 1.0 - 1e-10);
}

TEST(SizePmf, MixedMeanIsNu) {
  const SizePmf pmf = size_pmf(MixedPoisson{50, 0.5, 0.5});
  EXPECT_NEAR(pmf.mean(), 50.0, 1e-7);
  EXPECT_GE(pmf.total(), 1.0 - 1e-10);
  EXPECT_LE(pmf.total(), 1.0 + 1e-12);
}

TEST(SizePmf, MatchesSampledSizes) {
  const MixedPoisson model{20, 0.7, 0.5};
  const SizePmf pmf = size_pmf(model);
  constexpr int kTrials = 200000;
  std::vector<double> counts(static_cast<std::size_t>(pmf.last() + 2), 0.0);
  for (int t = 0; t < kTrials; ++t) {
    Rng rng = make_stream(8, 0, static_cast<std::uint64_t>(t));
    const std::int64_t n = std::min(draw_size(model, Hypothesis::h0, rng), pmf.last() + 1);
    counts[static_cast<std::size_t>(n)] += 1;
  }
  std::vector<double> obs, exp;
  double ob = 0, ex = 0;
  for (std::int64_t n = 0; n <= pmf.last() + 1; ++n) {
    ob += counts[static_cast<std::size_t>(n)];
    ex += pmf(n) * kTrials;
    if (ex >= 20) {
      obs.push_back(ob);
      exp.push_back(ex);
      ob = ex = 0;
    }
  }
  obs.back() += ob;
  exp.back() += ex;
  const testkit::ChiSquare chi = testkit::chi_square(obs, exp);
  EXPECT_LT(chi.statistic, chi.critical_99);
}

TEST(SizePmf, EnergyStoppedUnsupported) { EXPECT_THROW(size_pmf(energy_model(10, 1.0)), InvalidInput); }

TEST(SizeModel, Validation) {
  EXPECT_THROW(validate(Deterministic{-1}), InvalidParameter);
  EXPECT_NO_THROW(validate(Deterministic{0}));
  EXPECT_THROW(validate(MixedPoisson{10, 0.0, 0.0}), InvalidParameter);
  EXPECT_THROW(validate(MixedPoisson{10, 1.2, 0.0}), InvalidParameter);
  EXPECT_THROW(validate(MixedPoisson{10, 0.5, 1.0}), InvalidParameter);
  EXPECT_THROW(validate(MixedPoisson{10, 0.9, 0.4}), InvalidParameter);
  EXPECT_THROW(validate(MixedPoisson{0, 0.5, 0.5}), InvalidParameter);
  EXPECT_THROW(validate(energy_model(0, 1.0)), InvalidParameter);
  EXPECT_NO_THROW(validate(MixedPoisson{10, 0.7, 0.5}));
  EXPECT_NO_THROW(validate(MixedPoisson{10, 0.5, 0.5}));
}

TEST(SizeModel, Queries) {
  EXPECT_EQ(design_nu(Deterministic{12}), 12);
  EXPECT_EQ(design_nu(MixedPoisson{30, 0.5, 0.2}), 30);
  EXPECT_TRUE(is_data_independent(MixedPoisson{30, 0.5, 0.2}));
  EXPECT_FALSE(is_data_independent(energy_model(10, 1.0)));
}

TEST(SizeLimitLaw, PerModel) {
  EXPECT_EQ(size_limit_law(Deterministic{10}, Hypothesis::h0).mean(), 1.0);
  const SizeLimitLaw r = size_limit_law(MixedPoisson{10, 0.5, 0.5}, Hypothesis::h0);
  EXPECT_NEAR(r.expectation([](double x) { return x < 0.5 || x > 1.5 ? 1.0 : 0.0; }), 0.0, 1e-15);
  EXPECT_NEAR(r.expectation([](double x) { return x * x; }), 1.0 + 1.0 / 12.0, 1e-12);
  const EnergyStopped asym{100, {gaussian(-0.5, 1.0), gaussian(2.0, 1.0)}, gaussian(0.0, 1.0), {}};
  EXPECT_NEAR(size_limit_law(asym, Hypothesis::h0).mean(), 1.0 / 1.25, 1e-9);
  EXPECT_NEAR(size_limit_law(asym, Hypothesis::h1).mean(), 1.0 / 5.0, 1e-9);
}

TEST(NetworkProperties, MixedPoissonSizeRatioApproachesR) {
  // KS distance between the empirical law of N / nu and Uniform(0.5, 1.5).
  double prev = INFINITY;
  for (std::int64_t nu : {100, 1000, 10000}) {
    std::vector<double> ratio(20000);
    for (std::size_t t = 0; t < ratio.size(); ++t) {
      Rng rng = make_stream(13, static_cast<std::uint64_t>(nu), t);
      ratio[t] = static_cast<double>(draw_size(MixedPoisson{nu, 0.5, 0.5}, Hypothesis::h0, rng)) /
                 static_cast<double>(nu);
    }
    const double d = testkit::ks_statistic_mixed(
        ratio, [](double x) { return std::clamp(x - 0.5, 0.0, 1.0); },
        [](double x) { return std::clamp(x - 0.5, 0.0, 1.0); });
    EXPECT_LT(d, prev) << nu;
    prev = d;
  }
}
