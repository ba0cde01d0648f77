#include <cmath>
#include <random>

#include <Eigen/Core>
#include <gtest/gtest.h>

#include "stereogt/camera.hpp"
#include "support/random_rigs.hpp"

using namespace stereogt;
using stereogt::testing::uniform;

namespace {

PinholeCamera unit_camera() {
  PinholeCamera cam;
  cam.fx = cam.fy = 1.0;
  cam.cx = cam.cy = 0.0;
  cam.width = cam.height = 1;
  return cam;
}

// 3x4 projection P = K [R | t], applied to homogeneous world points.
Eigen::Vector2d homogeneous_oracle(const PinholeCamera& cam, const RigidTransform& pose,
                                   const Eigen::Vector3d& X) {
  Eigen::Matrix4d T = Eigen::Matrix4d::Identity();
  T.block<3, 3>(0, 0) = pose.R;
  T.block<3, 1>(0, 3) = pose.t;
  Eigen::Matrix<double, 3, 4> Pi = Eigen::Matrix<double, 3, 4>::Zero();
  Pi.block<3, 3>(0, 0) = Eigen::Matrix3d::Identity();
  Eigen::Matrix3d K;
  K << cam.fx, 0, cam.cx, 0, cam.fy, cam.cy, 0, 0, 1;
  const Eigen::Vector3d h = K * Pi * T * Eigen::Vector4d(X.x(), X.y(), X.z(), 1.0);
  return {h.x() / h.z(), h.y() / h.z()};
}

}  // namespace

TEST(Project, OpticalAxisHitsPrincipalPoint) {
  const Eigen::Vector2d p = project(unit_camera(), RigidTransform::identity(), {0, 0, 1});
  EXPECT_EQ(p, Eigen::Vector2d(0, 0));
}

TEST(Project, WorkedExample) {
  PinholeCamera cam;
  cam.fx = cam.fy = 1000;
  cam.cx = 2056;
  cam.cy = 1504;
  cam.width = 4112;
  cam.height = 3008;
  const Eigen::Vector2d p = project(cam, RigidTransform::identity(), {0.1, 0, 2});
  EXPECT_DOUBLE_EQ(p.x(), 2106.0);
  EXPECT_DOUBLE_EQ(p.y(), 1504.0);
}

TEST(Project, MatchesHomogeneousOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const PinholeCamera cam = stereogt::testing::random_camera(rng, 640, 480, 0.0);
    const RigidTransform pose = stereogt::testing::random_pose(rng, 0.3);
    for (int i = 0; i < 100; ++i) {
      const Eigen::Vector3d X(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, 1, 6));
      const Eigen::Vector2d a = project(cam, pose, X);
      const Eigen::Vector2d b = homogeneous_oracle(cam, pose, X);
      EXPECT_NEAR(a.x(), b.x(), 1e-9);
      EXPECT_NEAR(a.y(), b.y(), 1e-9);
    }
  }
}

TEST(Project, BehindCameraThrows) {
  EXPECT_THROW(project(unit_camera(), RigidTransform::identity(), {0, 0, 0}), BehindCameraError);
  EXPECT_THROW(project(unit_camera(), RigidTransform::identity(), {1, 1, -2}), BehindCameraError);
}

TEST(Distort, ZeroCoefficientsAreIdentity) {
  const Eigen::Vector2d p = distort(Distortion{}, {0.3, -0.2});
  EXPECT_EQ(p, Eigen::Vector2d(0.3, -0.2));
}

TEST(Distort, CenterIsFixed) {
  Distortion d{0.3, -0.1, 0.05, 0.01, -0.02};
  EXPECT_EQ(distort(d, {0, 0}), Eigen::Vector2d(0, 0));
}

TEST(Distort, RadialClosedForm) {
  Distortion d;
  d.k1 = 0.1;
  const Eigen::Vector2d p = distort(d, {0.5, 0});
  EXPECT_DOUBLE_EQ(p.x(), 0.5125);
  EXPECT_DOUBLE_EQ(p.y(), 0.0);
}

TEST(Distort, TangentialTerms) {
  Distortion d;
  d.p1 = 0.01;
  d.p2 = 0.02;
  const double x = 0.2, y = -0.4, r2 = x * x + y * y;
  const Eigen::Vector2d p = distort(d, {x, y});
  EXPECT_NEAR(p.x(), x + 2 * 0.01 * x * y + 0.02 * (r2 + 2 * x * x), 1e-15);
  EXPECT_NEAR(p.y(), y + 0.01 * (r2 + 2 * y * y) + 2 * 0.02 * x * y, 1e-15);
}

TEST(Undistort, ZeroCoefficientsAreIdentity) {
  EXPECT_EQ(undistort(Distortion{}, {0.3, -0.2}), Eigen::Vector2d(0.3, -0.2));
}

TEST(Undistort, InvertsWorkedExample) {
  Distortion d;
  d.k1 = 0.1;
  const Eigen::Vector2d p = undistort(d, {0.5125, 0});
  EXPECT_NEAR(p.x(), 0.5, 1e-8);
  EXPECT_NEAR(p.y(), 0.0, 1e-8);
}

TEST(Undistort, RoundTripBarrel) {
  Distortion d;
  d.k1 = -0.1;
  std::mt19937_64 rng(3);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const Eigen::Vector2d p(uniform(rng, -0.8, 0.8), uniform(rng, -0.6, 0.6));
    worst = std::max(worst, (distort(d, undistort(d, p)) - p).norm());
  }
  EXPECT_LT(worst, 1e-8);
}

TEST(Undistort, RoundTripMixedCoefficients) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    Distortion d{uniform(rng, -0.2, 0.2), uniform(rng, -0.2, 0.2), uniform(rng, -0.2, 0.2),
                 uniform(rng, -0.2, 0.2), uniform(rng, -0.2, 0.2)};
    for (int i = 0; i < 40; ++i) {
      // Large tangential terms fold the plane, so targets are drawn from the
      // image of distort().
      const Eigen::Vector2d p = distort(d, {uniform(rng, -0.5, 0.5), uniform(rng, -0.4, 0.4)});
      EXPECT_LT((distort(d, undistort(d, p)) - p).norm(), 1e-8);
    }
  }
}

TEST(Undistort, NoPreimageThrows) {
  Distortion d{0.081669, 0.081031, -0.0468999, 0.192314, 0.127795};
  EXPECT_THROW(undistort(d, {-0.287772, -0.34239}), ConvergenceError);
  Distortion k;
  k.k1 = 0.1;
  EXPECT_THROW(undistort(k, {std::nan(""), 0.0}), ConvergenceError);
}

TEST(Camera, ValidateRejectsBadFocalAndSize) {
  PinholeCamera cam = unit_camera();
  cam.fx = 0;
  EXPECT_THROW(cam.validate(), ArgumentError);
  cam = unit_camera();
  cam.height = 0;
  EXPECT_THROW(cam.validate(), ArgumentError);
}

TEST(Camera, PrincipalPointOutsideWarnsOnly) {
  PinholeCamera cam;
  cam.fx = cam.fy = 100;
  cam.width = 64;
  cam.height = 48;
  cam.cx = 80;
  cam.cy = 20;
  EXPECT_NO_THROW(cam.validate());
  EXPECT_FALSE(cam.warnings().empty());
  cam.cx = 30;
  EXPECT_TRUE(cam.warnings().empty());
}

TEST(Camera, HfovFormula) {
  PinholeCamera cam;
  cam.width = 4112;
  cam.fx = 3330;
  EXPECT_NEAR(cam.hfov() * 180 / M_PI, 63.4, 0.05);
  EXPECT_DOUBLE_EQ(cam.hfov(), 2 * std::atan(4112.0 / (2 * 3330.0)));
}

TEST(RigidTransform, ValidateRejectsNonRotation) {
  RigidTransform T;
  T.R(0, 0) = 1.0001;
  EXPECT_THROW(T.validate(), ArgumentError);
  T.R = -Eigen::Matrix3d::Identity();
  EXPECT_THROW(T.validate(), ArgumentError);
  T.R = rotation_from_euler(0.1, -0.2, 0.3);
  EXPECT_NO_THROW(T.validate());
}

TEST(RigidTransform, InverseAndComposition) {
  std::mt19937_64 rng(5);
  const RigidTransform a = stereogt::testing::random_pose(rng, 0.5);
  const RigidTransform b = stereogt::testing::random_pose(rng, 0.2);
  const Eigen::Vector3d p(0.3, -0.7, 2.0);
  EXPECT_LT(((a * b).apply(p) - a.apply(b.apply(p))).norm(), 1e-12);
  EXPECT_LT((a.inverse().apply(a.apply(p)) - p).norm(), 1e-12);
}

TEST(StereoRig, BaselineAndTargetCenter) {
  StereoRig rig;
  rig.cam_ref = rig.cam_tgt = unit_camera();
  rig.ref_to_tgt.R = rotation_from_euler(0.05, 0.0, 0.0);
  rig.ref_to_tgt.t = -rig.ref_to_tgt.R * Eigen::Vector3d(0.08, 0, 0);
  EXPECT_NEAR(rig.baseline(), 0.08, 1e-15);
  EXPECT_LT((rig.target_center() - Eigen::Vector3d(0.08, 0, 0)).norm(), 1e-15);
  rig.ref_to_tgt.t.setZero();
  EXPECT_THROW(rig.validate(), DegenerateRigError);
}

TEST(DepthConversion, WorkedExamples) {
  DisparityMap disp(3, 1);
  disp.set(0, 0, 80.0);
  disp.set(1, 0, 0.0);
  disp.set(2, 0, 1e-7);
  const DepthMap z8 = disparity_to_depth(disp, 1000, 0.08);
  EXPECT_DOUBLE_EQ(z8.values(0, 0), 1.0);
  EXPECT_FALSE(z8.is_valid(1, 0));
  EXPECT_FALSE(z8.is_valid(2, 0));
  const DepthMap z4 = disparity_to_depth(disp, 1000, 0.04);
  EXPECT_DOUBLE_EQ(z4.values(0, 0), 0.5);

  DepthMap depth(2, 1);
  depth.set(0, 0, 1.0);
  depth.set(1, 0, 0.0);
  const DisparityMap d = depth_to_disparity(depth, 1000, 0.08);
  EXPECT_DOUBLE_EQ(d.values(0, 0), 80.0);
  EXPECT_FALSE(d.is_valid(1, 0));
}

TEST(DepthConversion, RoundTripRelative) {
  std::mt19937_64 rng(6);
  DisparityMap disp(64, 32);
  for (int y = 0; y < 32; ++y)
    for (int x = 0; x < 64; ++x)
      if (uniform(rng, 0, 1) < 0.9) disp.set(x, y, uniform(rng, 0.01, 300));
  const DisparityMap back = depth_to_disparity(disparity_to_depth(disp, 731.5, 0.063), 731.5, 0.063);
  ASSERT_EQ(back.valid, disp.valid);
  for (int y = 0; y < 32; ++y)
    for (int x = 0; x < 64; ++x)
      if (disp.is_valid(x, y))
        EXPECT_NEAR(back.values(x, y) / disp.values(x, y), 1.0, 1e-6);
  EXPECT_TRUE(back.satisfies_invariants());
}

TEST(DepthConversion, RejectsNonPositiveParameters) {
  DisparityMap disp(1, 1);
  EXPECT_THROW(disparity_to_depth(disp, 0, 0.1), ArgumentError);
  EXPECT_THROW(disparity_to_depth(disp, 100, -0.1), ArgumentError);
}
