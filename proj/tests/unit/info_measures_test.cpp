#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "imreg/channel_model.hpp"
#include "imreg/errors.hpp"
#include "imreg/info_measures.hpp"
#include "oracles.hpp"

namespace imreg {
namespace {

TEST(JointPMF, RejectsBadInput) {
  EXPECT_THROW(JointPMF(1, 2, {0.5, 0.5}), ShapeError);
  EXPECT_THROW(JointPMF(2, 2, {0.5, 0.5}), ShapeError);
  EXPECT_THROW(JointPMF(2, 2, {0.5, 0.5, 0.5, -0.5}), ValidationError);
  EXPECT_THROW(JointPMF(2, 2, {0.25, 0.25, 0.25, 0.2}), ValidationError);
  EXPECT_THROW(JointPMF(2, 2, {0.25, 0.25, 0.25, std::nan("")}), ValidationError);
}

TEST(JointPMF, Marginals) {
  JointPMF p(2, 3, {0.1, 0.2, 0.1, 0.3, 0.1, 0.2});
  EXPECT_NEAR(p.marginal_x()[0], 0.4, 1e-15);
  EXPECT_NEAR(p.marginal_x()[1], 0.6, 1e-15);
  EXPECT_NEAR(p.marginal_y()[0], 0.4, 1e-15);
  EXPECT_NEAR(p.marginal_y()[2], 0.3, 1e-15);
  EXPECT_THROW(p.at(2, 0), ShapeError);
}

TEST(InfoDensity, BscValues) {
  const JointPMF p = bsc_joint(0.1);
  EXPECT_NEAR(info_density(p, 0, 0), std::log(1.8), 1e-15);
  EXPECT_NEAR(info_density(p, 0, 1), std::log(0.2), 1e-15);
}

TEST(InfoDensity, ZeroCellAndZeroMarginal) {
  const JointPMF p = bsc_joint(0.0);
  EXPECT_EQ(info_density(p, 0, 1), -std::numeric_limits<double>::infinity());
  JointPMF q(2, 2, {0.5, 0.5, 0.0, 0.0});
  EXPECT_THROW(info_density(q, 1, 0), DegenerateError);
  EXPECT_THROW(info_density(q, 2, 0), ShapeError);
}

TEST(Moments, BscMatchesOracle) {
  for (double d : {0.05, 0.1, 0.25}) {
    const auto o = testing::bsc_moments_oracle(d);
    const InfoMoments m = moments(bsc_joint(d));
    EXPECT_NEAR(m.mi, static_cast<double>(o.mi), 1e-12) << d;
    EXPECT_NEAR(m.dispersion, static_cast<double>(o.v), 1e-12) << d;
    EXPECT_NEAR(m.third_abs, static_cast<double>(o.t), 1e-12) << d;
    ASSERT_TRUE(m.b_be && m.b_ppv);
    EXPECT_NEAR(*m.b_be, 6 * m.third_abs / std::pow(m.dispersion, 1.5), 1e-9);
    EXPECT_NEAR(*m.b_ppv, 6 * m.third_abs / m.dispersion, 1e-9);
  }
}

TEST(Moments, FrozenBsc01) {
  const InfoMoments m = moments(bsc_joint(0.1));
  EXPECT_NEAR(m.mi, 0.36806420716849707, 1e-12);
  EXPECT_NEAR(m.dispersion, 0.43450162589252951, 1e-12);
  EXPECT_NEAR(m.third_abs, 0.78285207406896288, 1e-12);
}

TEST(Moments, DegenerateChannels) {
  const InfoMoments half = moments(bsc_joint(0.5));
  EXPECT_NEAR(half.mi, 0.0, 1e-15);
  EXPECT_TRUE(half.degenerate());
  const InfoMoments clean = moments(bsc_joint(0.0));
  EXPECT_NEAR(clean.mi, std::log(2.0), 1e-15);
  EXPECT_TRUE(clean.degenerate());
  EXPECT_TRUE(std::isinf(clean.lautum));
}

TEST(Moments, LautumOfProductIsZero) {
  const double px[] = {0.3, 0.7};
  const double py[] = {0.6, 0.4};
  const InfoMoments m = moments(JointPMF::product(px, py));
  EXPECT_NEAR(m.mi, 0.0, 1e-15);
  EXPECT_NEAR(m.lautum, 0.0, 1e-15);
}

TEST(EmpiricalMi, CountsAgreeWithJoint) {
  const SymbolSeq xs = {0, 1, 1, 0, 2, 2, 1};
  const SymbolSeq ys = {1, 1, 0, 0, 1, 1, 0};
  const JointPMF e = empirical_joint(xs, ys, 3, 2);
  EXPECT_NEAR(e(2, 1), 2.0 / 7.0, 1e-15);
  EXPECT_NEAR(empirical_mi(xs, ys, 3, 2), mutual_information(e), 1e-14);
  EXPECT_THROW(empirical_mi(xs, SymbolSeq{0, 1}, 3, 2), ShapeError);
}

TEST(EmpiricalMi, IndependentSequencesGiveZero) {
  const SymbolSeq xs = {0, 0, 1, 1};
  const SymbolSeq ys = {0, 1, 0, 1};
  EXPECT_NEAR(empirical_mi(xs, ys, 2, 2), 0.0, 1e-15);
}

TEST(KlDivergence, KnownValueAndSupport) {
  const double q[] = {0.5, 0.5};
  const double p[] = {0.25, 0.75};
  EXPECT_NEAR(kl_divergence(q, p), 0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0), 1e-15);
  const double z[] = {1.0, 0.0};
  EXPECT_THROW(kl_divergence(q, z), SupportError);
  EXPECT_NEAR(kl_divergence(z, q), std::log(2.0), 1e-15);
}

TEST(Cgf, EndpointsAndSlope) {
  const JointPMF p = bsc_joint(0.1);
  EXPECT_NEAR(cgf(p, 0.0), 0.0, 1e-15);
  // cgf(1) = log sum p * p/(pxpy) = log sum p^2 / (pxpy)
  EXPECT_NEAR(cgf(p, 1.0), std::log(2 * (0.45 * 0.45 + 0.05 * 0.05) / 0.25), 1e-13);
  const double h = 1e-6;
  EXPECT_NEAR((cgf(p, h) - cgf(p, -h)) / (2 * h), mutual_information(p), 1e-8);
}

TEST(RateFunction, ZeroAtMean) {
  const JointPMF p = bsc_joint(0.1);
  const RateEval r = rate_function(p, mutual_information(p));
  EXPECT_NEAR(r.rate, 0.0, 1e-9);
  EXPECT_NEAR(r.lambda_star, 0.0, 1e-9);
}

TEST(RateFunction, BoundaryIsPointMassTilt) {
  const JointPMF p = bsc_joint(0.1);
  const RateEval r = rate_function(p, max_info_density(p));
  EXPECT_NEAR(r.rate, -std::log(0.9), 1e-12);
  EXPECT_TRUE(std::isinf(r.lambda_star));
}

TEST(RateFunction, MatchesGridOracle) {
  const JointPMF p = bsc_joint(0.1);
  for (double t : {0.4, 0.45, 0.5, 0.55, 0.58}) {
    EXPECT_NEAR(rate_function(p, t).rate, static_cast<double>(testing::rate_oracle(p, t)), 1e-9)
        << "t=" << t;
  }
}

TEST(RateFunction, Errors) {
  const JointPMF p = bsc_joint(0.1);
  EXPECT_THROW(rate_function(p, 0.1), PreconditionError);
  EXPECT_THROW(rate_function(p, 0.6), InfeasibleThreshold);
}

TEST(DensityMiResidual, IdentityOnFixedExample) {
  const JointPMF p(2, 2, {0.4, 0.1, 0.2, 0.3});
  const SymbolSeq xs = {0, 1, 1, 0, 0, 1};
  const SymbolSeq ys = {0, 1, 0, 0, 1, 1};
  const auto r = density_mi_residual(p, xs, ys);
  EXPECT_NEAR(r.lhs, r.rhs, 1e-12);
}

TEST(MiFromCounts, RelabelingIsBitExact) {
  const std::uint64_t a[] = {3, 1, 0, 2, 5, 1};
  const std::uint64_t swapped_rows[] = {2, 5, 1, 3, 1, 0};
  const std::uint64_t transposed[] = {3, 2, 1, 5, 0, 1};
  const double base = mi_from_counts(a, 2, 3);
  EXPECT_EQ(mi_from_counts(swapped_rows, 2, 3), base);
  EXPECT_EQ(mi_from_counts(transposed, 3, 2), base);
}

}  // namespace
}  // namespace imreg
