#include "stereogt/rectification.hpp"

#include <cmath>

#include <Eigen/Geometry>
#include <Eigen/LU>

namespace stereogt {

namespace {

// Mean direction of the raw image center after rotation into the rectified
// frame, dehomogenized.
Eigen::Vector2d rotated_center(const PinholeCamera& cam, const Eigen::Matrix3d& R) {
  const Eigen::Vector2d c((cam.width - 1) * 0.5, (cam.height - 1) * 0.5);
  const Eigen::Vector2d n =
      undistort(cam.dist, Eigen::Vector2d((c.x() - cam.cx) / cam.fx, (c.y() - cam.cy) / cam.fy));
  const Eigen::Vector3d r = R * Eigen::Vector3d(n.x(), n.y(), 1.0);
  return {r.x() / r.z(), r.y() / r.z()};
}

}  // namespace

RectifiedSetup rectify_balanced(const StereoRig& rig) {
  rig.cam_ref.validate();
  rig.cam_tgt.validate();
  rig.ref_to_tgt.validate();
  if (rig.cam_ref.width != rig.cam_tgt.width || rig.cam_ref.height != rig.cam_tgt.height) {
    throw ArgumentError("rectify_balanced: cameras must share the same resolution");
  }

  const Eigen::Vector3d c2 = rig.target_center();
  const double b = c2.norm();
  if (!(b >= 1e-9)) throw DegenerateRigError("rectify_balanced: baseline shorter than 1e-9 m");

  const Eigen::Vector3d ex = c2 / b;
  const Eigen::Vector3d z_mean =
      Eigen::Vector3d::UnitZ() + rig.ref_to_tgt.R.transpose() * Eigen::Vector3d::UnitZ();
  Eigen::Vector3d ez = z_mean - z_mean.dot(ex) * ex;
  if (ez.norm() < 1e-9) {
    ez = Eigen::Vector3d::UnitZ() - ex.z() * ex;
    if (ez.norm() < 1e-9) throw DegenerateRigError("rectify_balanced: baseline along optical axis");
  }
  ez.normalize();
  const Eigen::Vector3d ey = ez.cross(ex).normalized();
  ez = ex.cross(ey);

  Eigen::Matrix3d R_new;
  R_new.row(0) = ex.transpose();
  R_new.row(1) = ey.transpose();
  R_new.row(2) = ez.transpose();

  RectifiedSetup out;
  out.kind = RectificationKind::balanced;
  out.baseline = b;
  out.ref.R = R_new;
  out.tgt.R = R_new * rig.ref_to_tgt.R.transpose();

  const double f_x = 0.5 * (rig.cam_ref.fx + rig.cam_tgt.fx);
  const double f_y = 0.5 * (rig.cam_ref.fy + rig.cam_tgt.fy);
  const Eigen::Vector2d mean_center =
      0.5 * (rotated_center(rig.cam_ref, out.ref.R) + rotated_center(rig.cam_tgt, out.tgt.R));
  const double cx = (rig.cam_ref.width - 1) * 0.5 - f_x * mean_center.x();
  const double cy = (rig.cam_ref.height - 1) * 0.5 - f_y * mean_center.y();

  Eigen::Matrix3d K;
  K << f_x, 0.0, cx, 0.0, f_y, cy, 0.0, 0.0, 1.0;
  out.ref.K = out.tgt.K = out.K_common = K;
  out.ref.width = out.tgt.width = out.common_width = rig.cam_ref.width;
  out.ref.height = out.tgt.height = out.common_height = rig.cam_ref.height;
  return out;
}

FovSelection select_narrow_fov(const PinholeCamera& a, const PinholeCamera& b) {
  const double ha = a.hfov();
  const double hb = b.hfov();
  if (ha < hb) return {1, 0};
  if (hb < ha) return {0, 1};
  if (a.pixel_count() < b.pixel_count()) return {1, 0};
  return {0, 1};
}

CropScaleIntrinsics unbalanced_intrinsics(const PinholeCamera& wide, const PinholeCamera& narrow) {
  wide.validate();
  narrow.validate();
  // 2*tan(HFOV_narrow/2)*f_wide, written so equal cameras give exact results.
  const double crop_w = narrow.width * (wide.fx / narrow.fx);
  const double crop_h = static_cast<double>(narrow.height) / narrow.width * crop_w;
  if (crop_w > wide.width * (1.0 + 1e-12) || crop_h > wide.height * (1.0 + 1e-12)) {
    throw GeometryError("unbalanced_intrinsics: crop of " + std::to_string(crop_w) + "x" +
                        std::to_string(crop_h) + " exceeds the " + std::to_string(wide.width) +
                        "x" + std::to_string(wide.height) + " sensor");
  }
  const double sx = narrow.width / crop_w;
  const double sy = narrow.height / crop_h;

  CropScaleIntrinsics out;
  out.crop_width = crop_w;
  out.crop_height = crop_h;
  out.K << wide.fx * sx, 0.0, (wide.cx - (wide.width - crop_w) / 2.0) * sx,
           0.0, wide.fy * sy, (wide.cy - (wide.height - crop_h) / 2.0) * sy,
           0.0, 0.0, 1.0;
  return out;
}

RectifiedSetup rectify_unbalanced(const StereoRig& rig) {
  const FovSelection sel = select_narrow_fov(rig.cam_ref, rig.cam_tgt);
  const PinholeCamera& wide = sel.wide == 0 ? rig.cam_ref : rig.cam_tgt;
  const PinholeCamera& narrow = sel.wide == 0 ? rig.cam_tgt : rig.cam_ref;

  const CropScaleIntrinsics crop = unbalanced_intrinsics(wide, narrow);
  const PinholeCamera simulated =
      PinholeCamera::from_K(crop.K, narrow.width, narrow.height, wide.dist);

  StereoRig sim = rig;
  (sel.wide == 0 ? sim.cam_ref : sim.cam_tgt) = simulated;
  const RectifiedSetup common = rectify_balanced(sim);

  RectifiedSetup out = common;
  out.kind = RectificationKind::unbalanced;
  out.cropped_side = sel.wide;

  RectifiedView& wide_view = sel.wide == 0 ? out.ref : out.tgt;
  const Eigen::Vector3d scale(crop.crop_width / narrow.width, crop.crop_height / narrow.height, 1.0);
  wide_view.K = scale.asDiagonal() * common.K_common;
  wide_view.width = static_cast<int>(std::lround(crop.crop_width));
  wide_view.height = static_cast<int>(std::lround(crop.crop_height));
  return out;
}

Eigen::Matrix3d rectified_view_mapping(const RectifiedView& from, const RectifiedView& to) {
  return to.K * to.R * from.R.transpose() * from.K.inverse();
}

Eigen::Vector2d apply_homography(const Eigen::Matrix3d& H, const Eigen::Vector2d& p) {
  const Eigen::Vector3d q = H * Eigen::Vector3d(p.x(), p.y(), 1.0);
  return {q.x() / q.z(), q.y() / q.z()};
}

WarpField rectification_warp(const PinholeCamera& raw, const RectifiedView& view) {
  WarpField w(view.width, view.height);
  const Eigen::Matrix3d back = view.R.transpose() * view.K.inverse();
  for (int y = 0; y < view.height; ++y) {
    for (int x = 0; x < view.width; ++x) {
      const Eigen::Vector3d ray = back * Eigen::Vector3d(x, y, 1.0);
      if (!(ray.z() > 1e-12)) continue;
      const Eigen::Vector2d d = distort(raw.dist, Eigen::Vector2d(ray.x() / ray.z(), ray.y() / ray.z()));
      w.src_x(x, y) = raw.fx * d.x() + raw.cx;
      w.src_y(x, y) = raw.fy * d.y() + raw.cy;
    }
  }
  return w;
}

Eigen::Vector2d rectify_pixel(const PinholeCamera& raw, const RectifiedView& view,
                              const Eigen::Vector2d& raw_pixel) {
  const Eigen::Vector2d n = undistort(
      raw.dist, Eigen::Vector2d((raw_pixel.x() - raw.cx) / raw.fx, (raw_pixel.y() - raw.cy) / raw.fy));
  const Eigen::Vector3d r = view.K * view.R * Eigen::Vector3d(n.x(), n.y(), 1.0);
  return {r.x() / r.z(), r.y() / r.z()};
}

Eigen::Vector2d project_rectified(const RectifiedView& view, const RigidTransform& cam_from_ref,
                                  const Eigen::Vector3d& point_ref) {
  const Eigen::Vector3d r = view.R * cam_from_ref.apply(point_ref);
  if (!(r.z() > 1e-12)) throw BehindCameraError("point lies behind the rectified view");
  const Eigen::Vector3d p = view.K * r;
  return {p.x() / p.z(), p.y() / p.z()};
}

}  // namespace stereogt
