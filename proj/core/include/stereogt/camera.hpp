#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "stereogt/image.hpp"

namespace stereogt {

/// Brown-Conrady coefficients: radial k1..k3, tangential p1, p2.
struct Distortion {
  double k1 = 0.0, k2 = 0.0, k3 = 0.0;
  double p1 = 0.0, p2 = 0.0;

  [[nodiscard]] bool is_zero() const noexcept {
    return k1 == 0.0 && k2 == 0.0 && k3 == 0.0 && p1 == 0.0 && p2 == 0.0;
  }
  friend bool operator==(const Distortion&, const Distortion&) = default;
};

/// Zero-skew pinhole camera with lens distortion.
struct PinholeCamera {
  double fx = 1.0, fy = 1.0;
  double cx = 0.0, cy = 0.0;
  int width = 1, height = 1;
  Distortion dist;

  /// Throws ArgumentError on non-positive focal lengths or image size.
  void validate() const;

  /// Non-fatal findings, e.g. a principal point outside the sensor.
  [[nodiscard]] std::vector<std::string> warnings() const;

  [[nodiscard]] Eigen::Matrix3d K() const;
  static PinholeCamera from_K(const Eigen::Matrix3d& K, int width, int height, Distortion dist = {});

  /// Horizontal field of view in radians, 2*atan(width / (2*fx)).
  [[nodiscard]] double hfov() const noexcept;
  [[nodiscard]] long long pixel_count() const noexcept {
    return static_cast<long long>(width) * height;
  }

  friend bool operator==(const PinholeCamera&, const PinholeCamera&) = default;
};

/// x_dst = R * x_src + t.
struct RigidTransform {
  Eigen::Matrix3d R = Eigen::Matrix3d::Identity();
  Eigen::Vector3d t = Eigen::Vector3d::Zero();

  static RigidTransform identity() { return {}; }

  /// Throws ArgumentError unless R is orthonormal with det(R) = 1 (1e-9).
  void validate() const;

  [[nodiscard]] Eigen::Vector3d apply(const Eigen::Vector3d& p) const { return R * p + t; }
  [[nodiscard]] RigidTransform inverse() const;

  /// (a * b)(p) = a(b(p)).
  friend RigidTransform operator*(const RigidTransform& a, const RigidTransform& b);
};

/// Two cameras and the transform taking reference-camera coordinates into
/// target-camera coordinates.
struct StereoRig {
  PinholeCamera cam_ref;
  PinholeCamera cam_tgt;
  RigidTransform ref_to_tgt;

  /// ||t|| in meters.
  [[nodiscard]] double baseline() const noexcept { return ref_to_tgt.t.norm(); }
  /// Target optical center expressed in the reference frame.
  [[nodiscard]] Eigen::Vector3d target_center() const;
  void validate() const;
};

/// Rotation about the camera y axis (yaw), x axis (pitch) and z axis (roll).
Eigen::Matrix3d rotation_from_euler(double yaw, double pitch, double roll);

/// Distortion-free projection of a world point into pixel coordinates.
/// Throws BehindCameraError when the point's camera-frame z is <= 1e-12.
Eigen::Vector2d project(const PinholeCamera& cam, const RigidTransform& world_to_cam,
                        const Eigen::Vector3d& world_point);

/// Applies the radial/tangential model to a normalized image point.
Eigen::Vector2d distort(const Distortion& dist, const Eigen::Vector2d& normalized);
inline Eigen::Vector2d distort(const PinholeCamera& cam, const Eigen::Vector2d& normalized) {
  return distort(cam.dist, normalized);
}

/// Inverts distort() by damped Newton iteration. Throws ConvergenceError
/// after 50 iterations without reaching the tolerance.
Eigen::Vector2d undistort(const Distortion& dist, const Eigen::Vector2d& distorted);
inline Eigen::Vector2d undistort(const PinholeCamera& cam, const Eigen::Vector2d& distorted) {
  return undistort(cam.dist, distorted);
}

/// Below this magnitude disparities and depths are treated as invalid.
inline constexpr double kMinPositive = 1e-6;

/// depth = f*b/disparity on valid pixels; disparities <= 1e-6 are invalidated.
DepthMap disparity_to_depth(const DisparityMap& disp, double focal_px, double baseline_m);

/// disparity = f*b/depth on valid pixels; depths <= 1e-6 are invalidated.
DisparityMap depth_to_disparity(const DepthMap& depth, double focal_px, double baseline_m);

}  // namespace stereogt
