#pragma once

#include <cmath>
#include <random>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "stereogt/camera.hpp"

namespace stereogt::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline PinholeCamera random_camera(std::mt19937_64& rng, int width, int height, double dist_scale) {
  PinholeCamera cam;
  cam.width = width;
  cam.height = height;
  cam.fx = uniform(rng, 0.8, 1.4) * width;
  cam.fy = cam.fx * uniform(rng, 0.98, 1.02);
  cam.cx = (width - 1) * 0.5 + uniform(rng, -0.03, 0.03) * width;
  cam.cy = (height - 1) * 0.5 + uniform(rng, -0.03, 0.03) * height;
  cam.dist.k1 = uniform(rng, -1.0, 1.0) * dist_scale;
  cam.dist.k2 = uniform(rng, -0.5, 0.5) * dist_scale;
  cam.dist.p1 = uniform(rng, -0.05, 0.05) * dist_scale;
  cam.dist.p2 = uniform(rng, -0.05, 0.05) * dist_scale;
  return cam;
}

/// Roughly horizontal rig with a few degrees of relative rotation.
inline RigidTransform random_pose(std::mt19937_64& rng, double baseline) {
  constexpr double deg = M_PI / 180.0;
  RigidTransform T;
  T.R = rotation_from_euler(uniform(rng, -3, 3) * deg, uniform(rng, -3, 3) * deg,
                            uniform(rng, -3, 3) * deg);
  const Eigen::Vector3d center(baseline, uniform(rng, -0.05, 0.05) * baseline,
                               uniform(rng, -0.05, 0.05) * baseline);
  T.t = -T.R * center;
  return T;
}

/// Projects a reference-frame point through a raw camera including lens
/// distortion, written out from the model equations.
inline Eigen::Vector2d raw_pixel(const PinholeCamera& cam, const RigidTransform& cam_from_ref,
                                 const Eigen::Vector3d& p_ref) {
  const Eigen::Vector3d p = cam_from_ref.R * p_ref + cam_from_ref.t;
  const double x = p.x() / p.z();
  const double y = p.y() / p.z();
  const double r2 = x * x + y * y;
  const auto& d = cam.dist;
  const double radial = 1 + d.k1 * r2 + d.k2 * r2 * r2 + d.k3 * r2 * r2 * r2;
  const double xd = x * radial + 2 * d.p1 * x * y + d.p2 * (r2 + 2 * x * x);
  const double yd = y * radial + d.p1 * (r2 + 2 * y * y) + 2 * d.p2 * x * y;
  return {cam.fx * xd + cam.cx, cam.fy * yd + cam.cy};
}

/// Angle between two rays in radians.
inline double ray_angle(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

}  // namespace stereogt::testing
