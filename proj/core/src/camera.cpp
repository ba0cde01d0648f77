#include "stereogt/camera.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Geometry>
#include <Eigen/LU>

namespace stereogt {

void PinholeCamera::validate() const {
  if (!(fx > 0.0) || !(fy > 0.0)) throw ArgumentError("camera focal lengths must be positive");
  if (width < 1 || height < 1) throw ArgumentError("camera size must be at least 1x1");
}

std::vector<std::string> PinholeCamera::warnings() const {
  std::vector<std::string> out;
  if (cx < 0.0 || cx >= width || cy < 0.0 || cy >= height) {
    std::ostringstream os;
    os << "principal point (" << cx << ", " << cy << ") lies outside the " << width << "x"
       << height << " sensor";
    out.push_back(os.str());
  }
  return out;
}

Eigen::Matrix3d PinholeCamera::K() const {
  Eigen::Matrix3d k;
  k << fx, 0.0, cx, 0.0, fy, cy, 0.0, 0.0, 1.0;
  return k;
}

PinholeCamera PinholeCamera::from_K(const Eigen::Matrix3d& K, int width, int height,
                                    Distortion dist) {
  PinholeCamera cam;
  cam.fx = K(0, 0);
  cam.fy = K(1, 1);
  cam.cx = K(0, 2);
  cam.cy = K(1, 2);
  cam.width = width;
  cam.height = height;
  cam.dist = dist;
  return cam;
}

double PinholeCamera::hfov() const noexcept {
  return 2.0 * std::atan(static_cast<double>(width) / (2.0 * fx));
}

void RigidTransform::validate() const {
  const double ortho = (R.transpose() * R - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  if (!(ortho < 1e-9)) throw ArgumentError("rotation matrix is not orthonormal");
  if (!(std::abs(R.determinant() - 1.0) < 1e-9)) {
    throw ArgumentError("rotation matrix must have determinant +1");
  }
  if (!t.allFinite()) throw ArgumentError("translation must be finite");
}

RigidTransform RigidTransform::inverse() const {
  RigidTransform inv;
  inv.R = R.transpose();
  inv.t = -(inv.R * t);
  return inv;
}

RigidTransform operator*(const RigidTransform& a, const RigidTransform& b) {
  RigidTransform c;
  c.R = a.R * b.R;
  c.t = a.R * b.t + a.t;
  return c;
}

Eigen::Vector3d StereoRig::target_center() const {
  return -(ref_to_tgt.R.transpose() * ref_to_tgt.t);
}

void StereoRig::validate() const {
  cam_ref.validate();
  cam_tgt.validate();
  ref_to_tgt.validate();
  if (!(baseline() > 0.0)) throw DegenerateRigError("stereo rig baseline must be positive");
}

Eigen::Matrix3d rotation_from_euler(double yaw, double pitch, double roll) {
  const Eigen::Matrix3d ry = Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitY()).toRotationMatrix();
  const Eigen::Matrix3d rx = Eigen::AngleAxisd(pitch, Eigen::Vector3d::UnitX()).toRotationMatrix();
  const Eigen::Matrix3d rz = Eigen::AngleAxisd(roll, Eigen::Vector3d::UnitZ()).toRotationMatrix();
  return rz * rx * ry;
}

Eigen::Vector2d project(const PinholeCamera& cam, const RigidTransform& world_to_cam,
                        const Eigen::Vector3d& world_point) {
  const Eigen::Vector3d p = world_to_cam.apply(world_point);
  if (!(p.z() > 1e-12)) throw BehindCameraError("point lies at or behind the camera plane");
  return {cam.fx * p.x() / p.z() + cam.cx, cam.fy * p.y() / p.z() + cam.cy};
}

Eigen::Vector2d distort(const Distortion& d, const Eigen::Vector2d& n) {
  const double x = n.x(), y = n.y();
  const double r2 = x * x + y * y;
  const double radial = 1.0 + r2 * (d.k1 + r2 * (d.k2 + r2 * d.k3));
  return {x * radial + 2.0 * d.p1 * x * y + d.p2 * (r2 + 2.0 * x * x),
          y * radial + d.p1 * (r2 + 2.0 * y * y) + 2.0 * d.p2 * x * y};
}

namespace {

Eigen::Matrix2d distort_jacobian(const Distortion& d, const Eigen::Vector2d& n) {
  const double x = n.x(), y = n.y();
  const double r2 = x * x + y * y;
  const double radial = 1.0 + r2 * (d.k1 + r2 * (d.k2 + r2 * d.k3));
  // d(radial)/d(r2)
  const double dradial = d.k1 + r2 * (2.0 * d.k2 + 3.0 * r2 * d.k3);
  Eigen::Matrix2d J;
  J(0, 0) = radial + 2.0 * x * x * dradial + 2.0 * d.p1 * y + 6.0 * d.p2 * x;
  J(0, 1) = 2.0 * x * y * dradial + 2.0 * d.p1 * x + 2.0 * d.p2 * y;
  J(1, 0) = 2.0 * x * y * dradial + 2.0 * d.p1 * x + 2.0 * d.p2 * y;
  J(1, 1) = radial + 2.0 * y * y * dradial + 6.0 * d.p1 * y + 2.0 * d.p2 * x;
  return J;
}

}  // namespace

Eigen::Vector2d undistort(const Distortion& d, const Eigen::Vector2d& target) {
  if (d.is_zero()) return target;
  constexpr int kMaxIter = 50;
  constexpr double kTol = 1e-14;

  Eigen::Vector2d p = target;
  Eigen::Vector2d r = distort(d, p) - target;
  double err = r.squaredNorm();
  for (int it = 0; it < kMaxIter; ++it) {
    if (err < kTol * kTol) return p;
    const Eigen::Matrix2d J = distort_jacobian(d, p);
    const Eigen::Vector2d step = J.partialPivLu().solve(r);
    // Backtrack until the residual decreases.
    double alpha = 1.0;
    bool improved = false;
    for (int k = 0; k < 20; ++k) {
      const Eigen::Vector2d cand = p - alpha * step;
      const Eigen::Vector2d rc = distort(d, cand) - target;
      if (rc.allFinite() && rc.squaredNorm() < err) {
        p = cand;
        r = rc;
        err = rc.squaredNorm();
        improved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!improved) break;
  }
  if (err < kTol * kTol) return p;
  // Accept points that stalled at round-off level.
  if (std::sqrt(err) < 1e-12 * (1.0 + target.norm())) return p;
  throw ConvergenceError("undistort did not converge within 50 iterations");
}

DepthMap disparity_to_depth(const DisparityMap& disp, double focal_px, double baseline_m) {
  if (!(focal_px > 0.0) || !(baseline_m > 0.0)) {
    throw ArgumentError("disparity_to_depth: focal length and baseline must be positive");
  }
  DepthMap out(disp.width(), disp.height());
  const double fb = focal_px * baseline_m;
  for (int y = 0; y < disp.height(); ++y) {
    for (int x = 0; x < disp.width(); ++x) {
      const double d = disp.values(x, y);
      if (disp.is_valid(x, y) && std::isfinite(d) && d > kMinPositive) out.set(x, y, fb / d);
    }
  }
  return out;
}

DisparityMap depth_to_disparity(const DepthMap& depth, double focal_px, double baseline_m) {
  if (!(focal_px > 0.0) || !(baseline_m > 0.0)) {
    throw ArgumentError("depth_to_disparity: focal length and baseline must be positive");
  }
  DisparityMap out(depth.width(), depth.height());
  const double fb = focal_px * baseline_m;
  for (int y = 0; y < depth.height(); ++y) {
    for (int x = 0; x < depth.width(); ++x) {
      const double z = depth.values(x, y);
      if (depth.is_valid(x, y) && std::isfinite(z) && z > kMinPositive) out.set(x, y, fb / z);
    }
  }
  return out;
}

}  // namespace stereogt
