#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "imreg/bounds.hpp"
#include "imreg/channel_model.hpp"
#include "imreg/errors.hpp"
#include "oracles.hpp"

namespace imreg {
namespace {

double k_der(double b) {
  return 6 * std::sqrt(3.0) * (std::log(2.0) / std::sqrt(2 * std::numbers::pi) + 2 * b);
}

TEST(QFunction, Values) {
  EXPECT_DOUBLE_EQ(q_function(0.0), 0.5);
  EXPECT_NEAR(q_function(1.96), 0.024997895148220434, 1e-15);
  EXPECT_NEAR(q_function(3.0), 0.0013498980316300945, 1e-16);
  EXPECT_EQ(q_function(60.0), 0.0);
  EXPECT_NEAR(q_function(-1.0), 1.0 - q_function(1.0), 1e-15);
}

TEST(QFunction, AgreesWithSeriesOracle) {
  for (double t = -6.0; t <= 8.0; t += 0.37) {
    EXPECT_NEAR(q_function(t), static_cast<double>(testing::q_oracle(t)), 1e-12) << t;
  }
}

TEST(QInverse, Values) {
  EXPECT_NEAR(q_inverse(0.5), 0.0, 1e-12);
  EXPECT_NEAR(q_inverse(0.024997895148220434), 1.96, 1e-9);
  EXPECT_THROW(q_inverse(0.0), PreconditionError);
  EXPECT_THROW(q_inverse(1.0), PreconditionError);
}

TEST(BerryEsseen, TauZeroAndPlugIn) {
  const InfoMoments m = moments(bsc_joint(0.1));
  const std::uint64_t n = 10000;
  const auto at_mean = berry_esseen_cdf_bound(m, n, n * m.mi);
  EXPECT_NEAR(at_mean.raw, 0.5 + *m.b_be / 100.0, 1e-12);
  const double delta = n * m.mi - 3 * std::sqrt(n * m.dispersion);
  EXPECT_NEAR(berry_esseen_cdf_bound(m, n, delta).raw, q_function(3.0) + *m.b_be / 100.0, 1e-12);
  EXPECT_THROW(berry_esseen_cdf_bound(moments(bsc_joint(0.5)), n, 0.0), DegenerateError);
}

TEST(BerryEsseen, VacuousIsFlaggedNotClamped) {
  const InfoMoments m = moments(bsc_joint(0.1));
  const auto b = berry_esseen_cdf_bound(m, 10, 10.0);
  EXPECT_GT(b.raw, 1.0);
  EXPECT_EQ(b.value, 1.0);
  EXPECT_TRUE(b.vacuous);
}

TEST(Sanov, VacuousAtMeanAndPointMassAtTop) {
  const JointPMF p = bsc_joint(0.1);
  const auto at_mean = sanov_tail_bound(p, 100, mutual_information(p));
  EXPECT_NEAR(at_mean.log_raw, 4 * std::log(101.0), 1e-6);
  EXPECT_TRUE(at_mean.vacuous);
  const auto top = sanov_tail_bound(p, 50, max_info_density(p));
  EXPECT_NEAR(top.log_raw, 4 * std::log(51.0) + 50 * std::log(0.9), 1e-9);
  EXPECT_THROW(sanov_tail_bound(p, 50, 0.7), InfeasibleThreshold);
}

TEST(Sanov, GridOracle) {
  const JointPMF p = bsc_joint(0.1);
  const double rate = static_cast<double>(testing::rate_oracle(p, 0.5));
  EXPECT_NEAR(sanov_tail_bound(p, 100, 0.5).log_raw, 4 * std::log(101.0) - 100 * rate, 1e-6);
}

TEST(Derangement, ClosedForm) {
  const InfoMoments m = moments(bsc_joint(0.1));
  const double at0 = derangement_tail_bound(m, 900, 0.0).raw;
  EXPECT_NEAR(at0, k_der(*m.b_ppv) / std::sqrt(900 * m.dispersion), 1e-12);
  EXPECT_NEAR(derangement_tail_bound(m, 900, 30.0).raw, at0 * std::exp(-10.0), 1e-15);
  const double d = 7.0;
  EXPECT_NEAR(derangement_tail_bound(m, 900, d + 3 * std::log(2.0)).raw,
              0.5 * derangement_tail_bound(m, 900, d).raw, 1e-15);
  EXPECT_THROW(derangement_tail_bound(m, 2, 0.0), PreconditionError);
}

TEST(FeinsteinBound, AssemblesTerms) {
  const JointPMF p = bsc_joint(0.1);
  const InfoMoments m = moments(p);
  const std::uint64_t n = 1000000;
  const double gamma = 1.0 / std::sqrt(static_cast<double>(n));
  const double lb = delta_lower(m, n, 5, 0.5, gamma);
  const BoundReport r = feinstein_error_bound(p, n, 5, 0.5, gamma, lb + 100.0);
  EXPECT_NEAR(r.M, 1e30 + 1, 1e16);
  EXPECT_NEAR(r.delta1 + r.delta2, r.delta, 1e-9);
  EXPECT_NEAR(r.delta2, 15 * std::log(1e6) + 3 * std::log(0.5), 1e-9);
  EXPECT_NEAR(r.term_cdf, q_function(r.tau) + r.term_be_residual, 1e-15);
  EXPECT_NEAR(r.term_derangement, k_der(*m.b_ppv) / std::sqrt((1 - gamma) * n), 1e-12);
  EXPECT_NEAR(r.total, r.term_cdf + r.term_derangement + r.term_sanov, 1e-12);
  EXPECT_GE(r.term_sanov, 0.0);
  EXPECT_NEAR(r.rate_threshold_t, r.delta1 / (gamma * n), 1e-12);
}

TEST(FeinsteinBound, InfeasibleT1MeansEmptyEvent) {
  const JointPMF p = bsc_joint(0.1);
  const InfoMoments m = moments(p);
  const std::uint64_t n = 30000;
  const double c = 1.0 / n;
  const double gamma = 1.0 / std::sqrt(static_cast<double>(n));
  const BoundReport r = feinstein_error_bound(p, n, 1, c, gamma, n * m.mi - 2 * std::sqrt(n * m.dispersion));
  EXPECT_TRUE(r.rate_threshold_infeasible);
  EXPECT_EQ(r.term_sanov, 0.0);
}

TEST(FeinsteinBound, Preconditions) {
  const JointPMF p = bsc_joint(0.1);
  EXPECT_THROW(feinstein_error_bound(p, 100, 5, 0.5, 0.1, 0.0), PreconditionError);
  EXPECT_THROW(feinstein_error_bound(p, 100, 5, 0.5, 1.5, 1e6), PreconditionError);
  EXPECT_THROW(feinstein_error_bound(bsc_joint(0.5), 100, 5, 0.5, 0.1, 1e6), DegenerateError);
}

TEST(Achievability, LargeNAndSmallN) {
  const JointPMF p = bsc_joint(0.1);
  const std::uint64_t n = 100'000'000;
  const auto big = achievability_check(p, n, 0.5, 5, 0.5, 1e-4);
  EXPECT_TRUE(big.ok);
  EXPECT_GT(big.delta_ub - big.delta_lb, 1e7);
  ASSERT_TRUE(big.witness);
  EXPECT_LE(big.witness->total, 0.5);

  const auto small = achievability_check(bsc_joint(0.3), 10, 0.01, 5, 0.5, 1.0 / std::sqrt(10.0));
  EXPECT_FALSE(small.ok);
  EXPECT_TRUE(small.eps_below_small_terms);
}

TEST(Achievability, IntervalWidthGrowsWithN) {
  const JointPMF p = bsc_joint(0.1);
  double prev = -INFINITY;
  for (std::uint64_t n = 30'000'000; n <= 300'000'000; n += 30'000'000) {
    const auto a = achievability_check(p, n, 0.05, 5, 0.5, 1.0 / std::sqrt(double(n)));
    ASSERT_FALSE(a.eps_below_small_terms);
    const double width = a.delta_ub - a.delta_lb;
    EXPECT_GE(width, prev);
    prev = width;
  }
}

TEST(GammaSchedule, Evaluates) {
  EXPECT_DOUBLE_EQ(GammaSchedule::power(0.5)(10000), 0.01);
  EXPECT_DOUBLE_EQ(GammaSchedule::constant(0.2)(10000), 0.2);
  EXPECT_EQ(GammaSchedule::power(0.5).describe(), "n^-0.5");
}

TEST(MinSampleSize, NotFoundForUselessChannel) {
  const auto r = min_sample_size(bsc_joint(0.5), 0.1, 5, 0.5, GammaSchedule::power(0.5));
  EXPECT_FALSE(r.n_min);
}

TEST(MinSampleSize, WitnessAndMinimality) {
  const JointPMF p = bsc_joint(0.2);
  const auto r = min_sample_size(p, 0.1, 5, 0.5, GammaSchedule::power(0.5));
  ASSERT_TRUE(r.n_min);
  ASSERT_TRUE(r.witness && r.witness->witness);
  EXPECT_LE(r.witness->witness->total, 0.1);
  const std::uint64_t n = *r.n_min;
  EXPECT_FALSE(achievability_check(p, n - 1, 0.1, 5, 0.5, std::pow(double(n - 1), -0.5)).ok);
}

TEST(MinSampleSize, CapRespected) {
  const auto r = min_sample_size(bsc_joint(0.2), 0.1, 5, 0.5, GammaSchedule::power(0.5), 1000);
  EXPECT_FALSE(r.n_min);
  EXPECT_EQ(r.cap, 1000u);
}

}  // namespace
}  // namespace imreg
