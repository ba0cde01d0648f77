#include <cmath>
#include <random>

#include <Eigen/Core>
#include <Eigen/LU>
#include <gtest/gtest.h>

#include "stereogt/rectification.hpp"
#include "support/random_rigs.hpp"

using namespace stereogt;
using stereogt::testing::uniform;

namespace {

PinholeCamera centered_camera(int w, int h, double f) {
  PinholeCamera c;
  c.fx = c.fy = f;
  c.width = w;
  c.height = h;
  c.cx = (w - 1) * 0.5;
  c.cy = (h - 1) * 0.5;
  return c;
}

StereoRig random_balanced_rig(std::mt19937_64& rng) {
  StereoRig rig;
  rig.cam_ref = stereogt::testing::random_camera(rng, 640, 480, 0.1);
  rig.cam_tgt = stereogt::testing::random_camera(rng, 640, 480, 0.1);
  rig.ref_to_tgt = stereogt::testing::random_pose(rng, uniform(rng, 0.04, 0.2));
  return rig;
}

// A point in the reference frame that lands inside both raw images.
bool visible_point(std::mt19937_64& rng, const StereoRig& rig, Eigen::Vector3d& p) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    const double z = uniform(rng, 0.8, 8.0);
    p = Eigen::Vector3d(uniform(rng, -0.4, 0.4) * z, uniform(rng, -0.3, 0.3) * z, z);
    const Eigen::Vector2d a = stereogt::testing::raw_pixel(rig.cam_ref, RigidTransform::identity(), p);
    const Eigen::Vector2d b = stereogt::testing::raw_pixel(rig.cam_tgt, rig.ref_to_tgt, p);
    if (a.x() >= 0 && a.y() >= 0 && a.x() < rig.cam_ref.width && a.y() < rig.cam_ref.height &&
        b.x() >= 0 && b.y() >= 0 && b.x() < rig.cam_tgt.width && b.y() < rig.cam_tgt.height) {
      return true;
    }
  }
  return false;
}

}  // namespace

TEST(RectifyBalanced, AlreadyRectifiedRigIsFixedPoint) {
  StereoRig rig;
  rig.cam_ref = rig.cam_tgt = centered_camera(640, 480, 500);
  rig.ref_to_tgt.t = Eigen::Vector3d(-0.1, 0, 0);
  const RectifiedSetup s = rectify_balanced(rig);
  EXPECT_LT((s.ref.R - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((s.tgt.R - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((s.K_common - rig.cam_ref.K()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(s.ref.width, 640);
  EXPECT_EQ(s.ref.height, 480);
  EXPECT_DOUBLE_EQ(s.baseline, 0.1);
}

TEST(RectifyBalanced, TwoDegreeYawAlignsRows) {
  StereoRig rig;
  rig.cam_ref = rig.cam_tgt = centered_camera(640, 480, 520);
  rig.ref_to_tgt.R = rotation_from_euler(2.0 * M_PI / 180.0, 0, 0);
  rig.ref_to_tgt.t = -rig.ref_to_tgt.R * Eigen::Vector3d(0.08, 0, 0);
  const RectifiedSetup s = rectify_balanced(rig);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    Eigen::Vector3d p;
    ASSERT_TRUE(visible_point(rng, rig, p));
    const Eigen::Vector2d a = project_rectified(s.ref, RigidTransform::identity(), p);
    const Eigen::Vector2d b = project_rectified(s.tgt, rig.ref_to_tgt, p);
    EXPECT_LT(std::abs(a.y() - b.y()), 0.5);
    EXPECT_GT(a.x() - b.x(), 0.0);
  }
}

TEST(RectifyBalanced, RandomRigsAlignRowsThroughDistortion) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const StereoRig rig = random_balanced_rig(rng);
    const RectifiedSetup s = rectify_balanced(rig);
    EXPECT_NEAR(s.baseline, rig.baseline(), 1e-15);
    for (int i = 0; i < 30; ++i) {
      Eigen::Vector3d p;
      ASSERT_TRUE(visible_point(rng, rig, p));
      const Eigen::Vector2d ra = stereogt::testing::raw_pixel(rig.cam_ref, RigidTransform::identity(), p);
      const Eigen::Vector2d rb = stereogt::testing::raw_pixel(rig.cam_tgt, rig.ref_to_tgt, p);
      const Eigen::Vector2d a = rectify_pixel(rig.cam_ref, s.ref, ra);
      const Eigen::Vector2d b = rectify_pixel(rig.cam_tgt, s.tgt, rb);
      EXPECT_LT(std::abs(a.y() - b.y()), 0.5);
    }
  }
}

TEST(RectifyBalanced, RotationsAreOrthonormalAndBaselineIsXAxis) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const StereoRig rig = random_balanced_rig(rng);
    const RectifiedSetup s = rectify_balanced(rig);
    for (const Eigen::Matrix3d& R : {s.ref.R, s.tgt.R}) {
      RigidTransform T;
      T.R = R;
      EXPECT_NO_THROW(T.validate());
    }
    // Target center seen from the rectified reference frame lies on +x.
    const Eigen::Vector3d c = s.ref.R * rig.target_center();
    EXPECT_NEAR(c.x(), rig.baseline(), 1e-12);
    EXPECT_NEAR(c.y(), 0.0, 1e-12);
    EXPECT_NEAR(c.z(), 0.0, 1e-12);
  }
}

TEST(RectifyBalanced, DegenerateBaselineThrows) {
  StereoRig rig;
  rig.cam_ref = rig.cam_tgt = centered_camera(64, 48, 50);
  rig.ref_to_tgt.t = Eigen::Vector3d(1e-12, 0, 0);
  EXPECT_THROW(rectify_balanced(rig), DegenerateRigError);
}

TEST(RectifyBalanced, SizeMismatchThrows) {
  StereoRig rig;
  rig.cam_ref = centered_camera(64, 48, 50);
  rig.cam_tgt = centered_camera(32, 24, 25);
  rig.ref_to_tgt.t = Eigen::Vector3d(-0.1, 0, 0);
  EXPECT_THROW(rectify_balanced(rig), ArgumentError);
}

TEST(SelectNarrowFov, WideLeftIsCropped) {
  PinholeCamera L = centered_camera(4112, 3008, 3330);
  PinholeCamera C = centered_camera(1936, 1216, 1700);
  EXPECT_NEAR(L.hfov() * 180 / M_PI, 63.4, 0.05);
  EXPECT_NEAR(C.hfov() * 180 / M_PI, 59.3, 0.05);
  const FovSelection s = select_narrow_fov(L, C);
  EXPECT_EQ(s.wide, 0);
  EXPECT_EQ(s.narrow, 1);
  const FovSelection t = select_narrow_fov(C, L);
  EXPECT_EQ(t.wide, 1);
  EXPECT_EQ(t.narrow, 0);
}

TEST(SelectNarrowFov, TieBreaks) {
  const PinholeCamera a = centered_camera(640, 480, 500);
  EXPECT_EQ(select_narrow_fov(a, a).narrow, 1);
  // Same HFOV, fewer pixels wins.
  const PinholeCamera small = centered_camera(320, 240, 250);
  EXPECT_EQ(select_narrow_fov(small, a).narrow, 0);
  EXPECT_EQ(select_narrow_fov(a, small).narrow, 1);
}

TEST(UnbalancedIntrinsics, SameCameraIsNoOp) {
  PinholeCamera a = centered_camera(640, 480, 500);
  a.cx = 300.5;
  const CropScaleIntrinsics c = unbalanced_intrinsics(a, a);
  EXPECT_DOUBLE_EQ(c.crop_width, 640);
  EXPECT_DOUBLE_EQ(c.crop_height, 480);
  EXPECT_EQ(c.K, a.K());
}

TEST(UnbalancedIntrinsics, DoubleResolutionHalvesIntrinsics) {
  PinholeCamera i = centered_camera(1280, 960, 1000);
  i.cx = 640;
  i.cy = 470;
  const PinholeCamera j = centered_camera(640, 480, 500);
  const CropScaleIntrinsics c = unbalanced_intrinsics(i, j);
  EXPECT_DOUBLE_EQ(c.crop_width, 1280);
  EXPECT_DOUBLE_EQ(c.crop_height, 960);
  EXPECT_DOUBLE_EQ(c.K(0, 0), 500);
  EXPECT_DOUBLE_EQ(c.K(1, 1), 500);
  EXPECT_DOUBLE_EQ(c.K(0, 2), 320);
  EXPECT_DOUBLE_EQ(c.K(1, 2), 235);
}

TEST(UnbalancedIntrinsics, CropWidthMatchesHfovFormula) {
  const PinholeCamera i = centered_camera(4112, 3008, 3330);
  const PinholeCamera j = centered_camera(1936, 1216, 1700);
  const CropScaleIntrinsics c = unbalanced_intrinsics(i, j);
  EXPECT_NEAR(c.crop_width, 2 * std::tan(j.hfov() / 2) * i.fx, 1e-9);
  EXPECT_NEAR(c.crop_height, 1216.0 / 1936.0 * c.crop_width, 1e-9);
  // The simulated camera sees exactly the narrow camera's HFOV.
  EXPECT_NEAR(2 * std::atan(j.width / (2 * c.K(0, 0))), j.hfov(), 1e-12);
}

TEST(UnbalancedIntrinsics, CornerRaysMatchCropThenResize) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const PinholeCamera i = stereogt::testing::random_camera(rng, 1600, 1200, 0.0);
    PinholeCamera j = stereogt::testing::random_camera(rng, 800, 500, 0.0);
    j.fx = j.fy = j.width / (2 * std::tan(i.hfov() * uniform(rng, 0.6, 0.95) / 2));
    const CropScaleIntrinsics c = unbalanced_intrinsics(i, j);
    const Eigen::Matrix3d Ki_inv = i.K().inverse();
    const Eigen::Matrix3d Kh_inv = c.K.inverse();
    const double ox = (i.width - c.crop_width) / 2, oy = (i.height - c.crop_height) / 2;
    for (const auto& [u, v] : {std::pair{0.0, 0.0}, std::pair{double(j.width), 0.0},
                               std::pair{0.0, double(j.height)}, std::pair{double(j.width), double(j.height)}}) {
      // Crop-then-resize written out on pixel coordinates.
      const Eigen::Vector3d src(u * c.crop_width / j.width + ox, v * c.crop_height / j.height + oy, 1);
      const double angle = stereogt::testing::ray_angle(Kh_inv * Eigen::Vector3d(u, v, 1), Ki_inv * src);
      EXPECT_LT(angle, 1e-6);
    }
  }
}

TEST(UnbalancedIntrinsics, CropBeyondSensorThrows) {
  const PinholeCamera wide = centered_camera(640, 480, 500);
  PinholeCamera tall = centered_camera(640, 640, 520);
  EXPECT_THROW(unbalanced_intrinsics(wide, tall), GeometryError);
}

TEST(RectifyUnbalanced, RowsAlignAfterRescaling) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    StereoRig rig;
    rig.cam_ref = stereogt::testing::random_camera(rng, 1200, 900, 0.05);
    rig.cam_ref.fx = rig.cam_ref.fy = 900;
    rig.cam_tgt = stereogt::testing::random_camera(rng, 480, 360, 0.05);
    rig.cam_tgt.fx = rig.cam_tgt.fy = 420;
    rig.ref_to_tgt = stereogt::testing::random_pose(rng, 0.04);
    const RectifiedSetup s = rectify_unbalanced(rig);
    ASSERT_EQ(s.kind, RectificationKind::unbalanced);
    ASSERT_EQ(s.cropped_side, 0);
    EXPECT_GT(s.ref.width, s.tgt.width);
    EXPECT_EQ(s.tgt.width, 480);
    EXPECT_EQ(s.tgt.height, 360);
    const double scale = s.ref.K(1, 1) / s.tgt.K(1, 1);
    for (int i = 0; i < 30; ++i) {
      Eigen::Vector3d p;
      ASSERT_TRUE(visible_point(rng, rig, p));
      const Eigen::Vector2d hi = project_rectified(s.ref, RigidTransform::identity(), p);
      const Eigen::Vector2d lo = project_rectified(s.tgt, rig.ref_to_tgt, p);
      EXPECT_LT(std::abs(lo.y() * scale - hi.y()), 0.5);
    }
  }
}

TEST(RectifyUnbalanced, FrontoParallelDisparityAtCommonResolution) {
  StereoRig rig;
  rig.cam_ref = centered_camera(1200, 900, 900);
  rig.cam_tgt = centered_camera(480, 360, 420);
  rig.ref_to_tgt.t = Eigen::Vector3d(-0.04, 0, 0);
  const RectifiedSetup s = rectify_unbalanced(rig);
  const double f = s.K_common(0, 0);
  const double sx = static_cast<double>(s.common_width) / s.ref.width;
  for (double z : {0.6, 1.0, 2.5}) {
    for (double x : {-0.2, 0.0, 0.15}) {
      const Eigen::Vector3d p(x * z, 0.1 * z, z);
      const double u_ref = project_rectified(s.ref, RigidTransform::identity(), p).x() * sx;
      const double u_tgt = project_rectified(s.tgt, rig.ref_to_tgt, p).x();
      EXPECT_NEAR(u_ref - u_tgt, f * 0.04 / z, 0.25);
    }
  }
}

TEST(RectifyUnbalanced, BalancedInputDegenerates) {
  std::mt19937_64 rng(6);
  const StereoRig rig = random_balanced_rig(rng);
  StereoRig same = rig;
  same.cam_tgt = rig.cam_ref;
  same.cam_tgt.dist = rig.cam_tgt.dist;
  const RectifiedSetup a = rectify_balanced(same);
  const RectifiedSetup b = rectify_unbalanced(same);
  EXPECT_LT((a.K_common - b.K_common).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LT((a.ref.K - b.ref.K).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LT((a.ref.R - b.ref.R).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(a.ref.width, b.ref.width);
  EXPECT_EQ(a.ref.height, b.ref.height);
}

TEST(LrToLcMapping, IdenticalSetupsGiveIdentity) {
  std::mt19937_64 rng(7);
  const RectifiedSetup s = rectify_balanced(random_balanced_rig(rng));
  EXPECT_LT((lr_to_lc_mapping(s, s) - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(LrToLcMapping, DepthIndependentAndInvertible) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    StereoRig lr_rig = random_balanced_rig(rng);
    StereoRig lc_rig;
    lc_rig.cam_ref = lr_rig.cam_ref;
    lc_rig.cam_tgt = stereogt::testing::random_camera(rng, 320, 240, 0.05);
    lc_rig.cam_tgt.fx = lc_rig.cam_tgt.fy = 0.8 * lc_rig.cam_ref.fx * 320 / 640;
    lc_rig.ref_to_tgt = stereogt::testing::random_pose(rng, 0.04);
    const RectifiedSetup lr = rectify_balanced(lr_rig);
    const RectifiedSetup lc = rectify_unbalanced(lc_rig);
    const Eigen::Matrix3d H = lr_to_lc_mapping(lr, lc);
    EXPECT_LT((H * H.inverse() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-9);
    for (int i = 0; i < 20; ++i) {
      const Eigen::Vector3d dir(uniform(rng, -0.3, 0.3), uniform(rng, -0.2, 0.2), 1.0);
      const Eigen::Vector2d first =
          apply_homography(H, project_rectified(lr.ref, RigidTransform::identity(), dir));
      for (double depth : {0.5, 1.3, 4.0, 20.0}) {
        const Eigen::Vector3d p = depth * dir;
        const Eigen::Vector2d mapped =
            apply_homography(H, project_rectified(lr.ref, RigidTransform::identity(), p));
        const Eigen::Vector2d direct = project_rectified(lc.ref, RigidTransform::identity(), p);
        EXPECT_LT((mapped - direct).norm(), 1e-6);
        EXPECT_LT((mapped - first).norm(), 1e-9);
      }
    }
  }
}

TEST(RectificationWarp, InvertsRectifyPixel) {
  std::mt19937_64 rng(9);
  const StereoRig rig = random_balanced_rig(rng);
  const RectifiedSetup s = rectify_balanced(rig);
  const WarpField w = rectification_warp(rig.cam_ref, s.ref);
  ASSERT_EQ(w.width(), s.ref.width);
  for (int y = 0; y < w.height(); y += 37) {
    for (int x = 0; x < w.width(); x += 41) {
      ASSERT_TRUE(w.has_source(x, y));
      const Eigen::Vector2d back = rectify_pixel(rig.cam_ref, s.ref, {w.src_x(x, y), w.src_y(x, y)});
      EXPECT_NEAR(back.x(), x, 1e-6);
      EXPECT_NEAR(back.y(), y, 1e-6);
    }
  }
}
