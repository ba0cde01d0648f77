#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "stereogt/metrics.hpp"
#include "support/naive_metrics.hpp"

using namespace stereogt;
using stereogt::testing::random_map;
using stereogt::testing::random_mask;

TEST(StereoMetrics, PerfectPrediction) {
  std::mt19937_64 rng(1);
  const auto gt = random_map<DisparityMap>(rng, 20, 10, 1, 50, 0.8);
  const StereoMetrics m = stereo_metrics(gt, gt);
  EXPECT_EQ(m.bad2, 0.0);
  EXPECT_EQ(m.bad8, 0.0);
  EXPECT_EQ(m.mae, 0.0);
  EXPECT_EQ(m.rmse, 0.0);
  EXPECT_EQ(m.count, gt.valid_count());
}

TEST(StereoMetrics, FourPixelWorkedExample) {
  DisparityMap gt(4, 1), pred(4, 1);
  const double err[4] = {1, 3, 5, 9};
  for (int x = 0; x < 4; ++x) {
    gt.set(x, 0, 20);
    pred.set(x, 0, 20 + (x % 2 ? -err[x] : err[x]));
  }
  const StereoMetrics m = stereo_metrics(pred, gt);
  EXPECT_EQ(m.bad2, 75.0);
  EXPECT_EQ(m.bad4, 50.0);
  EXPECT_EQ(m.bad6, 25.0);
  EXPECT_EQ(m.bad8, 25.0);
  EXPECT_DOUBLE_EQ(m.mae, 4.5);
  EXPECT_DOUBLE_EQ(m.rmse, std::sqrt(29.0));
}

TEST(StereoMetrics, MissingPixelsCountAsBad) {
  DisparityMap gt(2, 1), pred(2, 1);
  gt.set(0, 0, 10);
  gt.set(1, 0, 10);
  pred.set(0, 0, 10.5);
  const StereoMetrics m = stereo_metrics(pred, gt);
  EXPECT_EQ(m.missing, 1u);
  EXPECT_EQ(m.bad8, 50.0);
  EXPECT_DOUBLE_EQ(m.mae, 0.5);
  const StereoMetrics none = stereo_metrics(DisparityMap(2, 1), gt);
  EXPECT_EQ(none.bad2, 100.0);
  EXPECT_TRUE(std::isnan(none.mae));
}

TEST(StereoMetrics, MatchesNaiveOracle) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 30; ++i) {
    const auto gt = random_map<DisparityMap>(rng, 31, 17, 1, 60, 0.8);
    const auto pred = random_map<DisparityMap>(rng, 31, 17, 1, 60, 0.9);
    const Mask mask = random_mask(rng, 31, 17, 0.7);
    const StereoMetrics m = stereo_metrics(pred, gt, &mask);
    const auto o = stereogt::testing::naive_stereo(pred, gt, &mask);
    EXPECT_EQ(m.count, o.n);
    EXPECT_EQ(m.missing, o.missing);
    EXPECT_EQ(m.bad2, o.bad(o.over2));
    EXPECT_EQ(m.bad4, o.bad(o.over4));
    EXPECT_EQ(m.bad6, o.bad(o.over6));
    EXPECT_EQ(m.bad8, o.bad(o.over8));
    EXPECT_NEAR(m.mae, o.mae(), 1e-12);
    EXPECT_NEAR(m.rmse, o.rmse(), 1e-12);
    EXPECT_GE(m.bad2, m.bad4);
    EXPECT_GE(m.bad4, m.bad6);
    EXPECT_GE(m.bad6, m.bad8);
    EXPECT_GE(m.rmse, m.mae);
  }
}

TEST(StereoMetrics, Errors) {
  EXPECT_THROW(stereo_metrics(DisparityMap(2, 2), DisparityMap(2, 2)), EmptyStratumError);
  EXPECT_THROW(stereo_metrics(DisparityMap(2, 2), DisparityMap(3, 2)), ShapeError);
}

TEST(MonoMetrics, UniformRatio) {
  std::mt19937_64 rng(3);
  const auto gt = random_map<DepthMap>(rng, 16, 8, 0.5, 10, 1.0);
  DepthMap pred = gt;
  for (auto& v : pred.values.pixels()) v *= 1.1;
  const MonoMetrics m = mono_metrics(pred, gt);
  EXPECT_EQ(m.delta105, 0.0);
  EXPECT_EQ(m.delta115, 100.0);
  EXPECT_EQ(m.delta125, 100.0);
  EXPECT_NEAR(m.abs_rel, 0.1, 1e-12);
  const MonoMetrics p = mono_metrics(gt, gt);
  EXPECT_EQ(p.delta105, 100.0);
  EXPECT_EQ(p.abs_rel, 0.0);
}

TEST(MonoMetrics, MatchesNaiveOracle) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 30; ++i) {
    const auto gt = random_map<DepthMap>(rng, 23, 19, 0.5, 8, 0.85);
    auto pred = random_map<DepthMap>(rng, 23, 19, 0.5, 8, 0.9);
    for (int k = 0; k < 20; ++k) pred.values(k, 3) = -0.5;  // non-positive yet flagged valid
    const Mask mask = random_mask(rng, 23, 19, 0.8);
    const MonoMetrics m = mono_metrics(pred, gt, &mask);
    const auto o = stereogt::testing::naive_mono(pred, gt, &mask);
    EXPECT_EQ(m.count, o.n);
    EXPECT_EQ(m.excluded, o.excluded);
    EXPECT_EQ(m.delta105, 100.0 * o.d105 / o.n);
    EXPECT_EQ(m.delta115, 100.0 * o.d115 / o.n);
    EXPECT_EQ(m.delta125, 100.0 * o.d125 / o.n);
    EXPECT_NEAR(m.mae, static_cast<double>(o.abs / o.n), 1e-12);
    EXPECT_NEAR(m.abs_rel, static_cast<double>(o.rel / o.n), 1e-12);
    EXPECT_NEAR(m.rmse, static_cast<double>(std::sqrt(o.sq / o.n)), 1e-12);
  }
}

TEST(ScaleShiftAlign, Identity) {
  std::mt19937_64 rng(5);
  const auto gt = random_map<DepthMap>(rng, 10, 10, 1, 5, 0.9);
  const Alignment a = scale_shift_align(gt, gt);
  EXPECT_NEAR(a.scale, 1.0, 1e-12);
  EXPECT_NEAR(a.shift, 0.0, 1e-12);
}

TEST(ScaleShiftAlign, ExactAffine) {
  std::mt19937_64 rng(6);
  const auto gt = random_map<DepthMap>(rng, 20, 15, 4, 9, 0.9);
  DepthMap pred = gt;
  for (auto& v : pred.values.pixels()) v = (v - 3) / 2;
  const Alignment a = scale_shift_align(pred, gt);
  EXPECT_NEAR(a.scale, 2.0, 1e-12);
  EXPECT_NEAR(a.shift, 3.0, 1e-12);
  EXPECT_LT(mono_metrics(a.aligned, gt).abs_rel, 1e-9);
  EXPECT_FALSE(a.degenerate);
}

TEST(ScaleShiftAlign, AffineRecoveryAndPrescaleInvariance) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 20; ++i) {
    const auto gt = random_map<DepthMap>(rng, 20, 12, 0.5, 6, 0.9);
    const double a = 0.1 + 3 * u(rng), b = 4 * u(rng) - 1;
    DepthMap pred = gt;
    for (auto& v : pred.values.pixels()) v = a * v + b;
    const Alignment al = scale_shift_align(pred, gt);
    const MonoMetrics m = mono_metrics(al.aligned, gt);
    EXPECT_EQ(m.delta105, 100.0);
    EXPECT_LT(m.abs_rel, 1e-9);

    const double c = 0.5 + 5 * u(rng);
    DepthMap scaled = pred;
    for (auto& v : scaled.values.pixels()) v *= c;
    const Alignment as = scale_shift_align(scaled, gt);
    EXPECT_NEAR(as.scale, al.scale / c, 1e-9);
    for (int y = 0; y < gt.height(); ++y)
      for (int x = 0; x < gt.width(); ++x)
        if (al.aligned.is_valid(x, y)) EXPECT_NEAR(as.aligned.values(x, y), al.aligned.values(x, y), 1e-9);
  }
}

TEST(ScaleShiftAlign, MatchesNaiveOracleInBothSpaces) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 30; ++i) {
    const auto gt = random_map<DepthMap>(rng, 17, 13, 0.5, 6, 0.9);
    const auto pred = random_map<DepthMap>(rng, 17, 13, 0.5, 6, 0.9);
    const Mask mask = random_mask(rng, 17, 13, 0.8);
    for (bool inv : {false, true}) {
      const Alignment a =
          scale_shift_align(pred, gt, &mask, inv ? AlignSpace::inverse_depth : AlignSpace::depth);
      long double s = 0, t = 0;
      stereogt::testing::naive_align(pred, gt, &mask, inv, s, t);
      EXPECT_NEAR(a.scale, static_cast<double>(s), 1e-12);
      EXPECT_NEAR(a.shift, static_cast<double>(t), 1e-12);
    }
  }
}

TEST(ScaleShiftAlign, DegenerateAndNonPositive) {
  DepthMap gt(3, 1), pred(3, 1);
  gt.set(0, 0, 1);
  gt.set(1, 0, 2);
  gt.set(2, 0, 6);
  for (int x = 0; x < 3; ++x) pred.set(x, 0, 4);
  const Alignment a = scale_shift_align(pred, gt);
  EXPECT_TRUE(a.degenerate);
  EXPECT_EQ(a.scale, 0.0);
  EXPECT_DOUBLE_EQ(a.shift, 3.0);

  // Anti-correlated prediction pushes one aligned pixel below zero.
  DepthMap anti(3, 1);
  anti.set(0, 0, 10);
  anti.set(1, 0, 9);
  anti.set(2, 0, 1);
  DepthMap g2(3, 1);
  g2.set(0, 0, 0.1);
  g2.set(1, 0, 0.2);
  g2.set(2, 0, 5);
  const Alignment b = scale_shift_align(anti, g2);
  EXPECT_LT(b.scale, 0.0);
  EXPECT_EQ(b.nonpositive + b.aligned.valid_count(), 3u);
  EXPECT_TRUE(b.aligned.satisfies_invariants());
  EXPECT_THROW(scale_shift_align(DepthMap(2, 2), DepthMap(2, 2)), EmptyStratumError);
}

TEST(PlaneFit, ExactPlane) {
  DisparityMap d(40, 30);
  for (int y = 0; y < 30; ++y)
    for (int x = 0; x < 40; ++x) d.set(x, y, 12.5 + 0.31 * x - 0.07 * y);
  EXPECT_LT(plane_fit_residual(d, Mask(40, 30, 1)), 1e-6);
}

TEST(PlaneFit, UniformNoiseGivesItsStandardDeviation) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  DisparityMap d(200, 150);
  for (int y = 0; y < 150; ++y)
    for (int x = 0; x < 200; ++x) d.set(x, y, 30 - 0.02 * x + 0.05 * y + u(rng));
  EXPECT_NEAR(plane_fit_residual(d, Mask(200, 150, 1)), 0.2 / std::sqrt(12.0), 0.1 * 0.0577);
}

TEST(PlaneFit, MatchesNaiveOracle) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 30; ++i) {
    const auto d = random_map<DisparityMap>(rng, 30, 20, 5, 40, 0.9);
    const Mask region = random_mask(rng, 30, 20, 0.6);
    EXPECT_NEAR(plane_fit_residual(d, region), stereogt::testing::naive_plane_residual(d, region), 1e-12);
  }
}

TEST(PlaneFit, DegenerateRegions) {
  DisparityMap d(10, 10);
  for (int y = 0; y < 10; ++y)
    for (int x = 0; x < 10; ++x) d.set(x, y, 5);
  Mask two(10, 10, 0);
  two(1, 1) = two(2, 2) = 1;
  EXPECT_THROW(plane_fit_residual(d, two), DegenerateRegionError);
  Mask line(10, 10, 0);
  for (int k = 0; k < 10; ++k) line(k, k) = 1;
  EXPECT_THROW(plane_fit_residual(d, line), DegenerateRegionError);
}

TEST(DepthInliers, Examples) {
  DepthMap a(4, 1), b(4, 1);
  for (int x = 0; x < 4; ++x) {
    a.set(x, 0, 1.0);
    b.set(x, 0, x < 2 ? 1.0 : 1.02);
  }
  const InlierStats same = depth_inlier_compare(a, a, 0.01);
  EXPECT_EQ(same.inlier_percent, 100.0);
  EXPECT_EQ(same.inlier_rmse, 0.0);
  const InlierStats half = depth_inlier_compare(a, b, 0.01);
  EXPECT_EQ(half.inlier_percent, 50.0);
  EXPECT_EQ(half.inliers, 2u);
  EXPECT_THROW(depth_inlier_compare(DepthMap(2, 1), DepthMap(2, 1), 0.01), EmptyStratumError);
}

TEST(DepthInliers, MatchesNaiveOracle) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 30; ++i) {
    const auto a = random_map<DepthMap>(rng, 25, 20, 1, 1.05, 0.9);
    const auto b = random_map<DepthMap>(rng, 25, 20, 1, 1.05, 0.9);
    const InlierStats s = depth_inlier_compare(a, b, 0.01);
    const auto o = stereogt::testing::naive_inliers(a, b, 0.01);
    EXPECT_EQ(s.count, o.n);
    EXPECT_EQ(s.inliers, o.inliers);
    EXPECT_EQ(s.inlier_percent, 100.0 * o.inliers / o.n);
    EXPECT_NEAR(s.inlier_rmse, static_cast<double>(std::sqrt(o.sq / o.inliers)), 1e-12);
  }
}
