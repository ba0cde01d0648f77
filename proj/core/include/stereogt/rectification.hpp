#pragma once

#include <Eigen/Core>

#include "stereogt/camera.hpp"
#include "stereogt/warp.hpp"

namespace stereogt {

enum class RectificationKind { balanced, unbalanced };

/// One side of a rectified pair: new intrinsics, the rotation taking raw
/// camera coordinates into the rectified frame, and the output raster size.
struct RectifiedView {
  Eigen::Matrix3d K = Eigen::Matrix3d::Identity();
  Eigen::Matrix3d R = Eigen::Matrix3d::Identity();
  int width = 0;
  int height = 0;

  [[nodiscard]] double focal() const noexcept { return K(0, 0); }
  [[nodiscard]] PinholeCamera camera() const { return PinholeCamera::from_K(K, width, height); }
};

struct RectifiedSetup {
  RectificationKind kind = RectificationKind::balanced;
  RectifiedView ref;
  RectifiedView tgt;
  /// Shared intrinsics at the common resolution. For a balanced pair this is
  /// ref.K at ref's size; for an unbalanced pair it is the rectified
  /// intrinsics at the narrow camera's resolution.
  Eigen::Matrix3d K_common = Eigen::Matrix3d::Identity();
  int common_width = 0;
  int common_height = 0;
  double baseline = 0.0;
  /// Unbalanced only: 0 when the reference camera was cropped, 1 when the
  /// target was. -1 for balanced setups.
  int cropped_side = -1;
};

/// Row-aligning rectification for two cameras of equal resolution. The new
/// x axis follows the baseline and the new z axis is the mean optical axis
/// orthogonalized against it. Both views share K with averaged focal lengths;
/// the principal point centers the mapped raw image centers.
/// Throws DegenerateRigError when the baseline is shorter than 1e-9 m.
RectifiedSetup rectify_balanced(const StereoRig& rig);

/// Which of two cameras is cropped (`wide`) and which one sets the target
/// field of view and resolution (`narrow`). Indices refer to argument order.
struct FovSelection {
  int wide = 0;
  int narrow = 1;
};

/// The narrow camera has the smaller horizontal FOV. Ties go to the camera
/// with fewer pixels, then to the second argument.
FovSelection select_narrow_fov(const PinholeCamera& a, const PinholeCamera& b);

struct CropScaleIntrinsics {
  double crop_width = 0.0;   ///< Width of the crop taken from the wide camera.
  double crop_height = 0.0;  ///< Height of that crop.
  Eigen::Matrix3d K = Eigen::Matrix3d::Identity();  ///< Wide camera K after crop+resize to the narrow size.
};

/// Simulates cropping the wide camera to the narrow camera's HFOV and aspect
/// ratio, then resizing it to the narrow camera's resolution.
/// Throws GeometryError if the crop exceeds the wide sensor.
CropScaleIntrinsics unbalanced_intrinsics(const PinholeCamera& wide, const PinholeCamera& narrow);

/// Rectification of cameras with different resolution and FOV. The wide
/// camera is rectified at its cropped native resolution and the narrow one
/// at its own, so that rescaling alone brings rows into alignment.
RectifiedSetup rectify_unbalanced(const StereoRig& rig);

/// Homography taking pixels of the reference view of `from` to the reference
/// view of `to`. Both setups must rectify the same physical reference camera.
Eigen::Matrix3d rectified_view_mapping(const RectifiedView& from, const RectifiedView& to);
inline Eigen::Matrix3d lr_to_lc_mapping(const RectifiedSetup& lr, const RectifiedSetup& lc) {
  return rectified_view_mapping(lr.ref, lc.ref);
}

/// Applies a homography to a pixel and dehomogenizes.
Eigen::Vector2d apply_homography(const Eigen::Matrix3d& H, const Eigen::Vector2d& p);

/// Backward warp from a rectified view into the raw (distorted) image.
WarpField rectification_warp(const PinholeCamera& raw, const RectifiedView& view);

/// Forward map of a raw distorted pixel into the rectified view.
Eigen::Vector2d rectify_pixel(const PinholeCamera& raw, const RectifiedView& view,
                              const Eigen::Vector2d& raw_pixel);

/// Projects a point given in raw reference-camera coordinates into a view
/// whose raw camera sits at `cam_from_ref` relative to that reference.
Eigen::Vector2d project_rectified(const RectifiedView& view, const RigidTransform& cam_from_ref,
                                  const Eigen::Vector3d& point_ref);

}  // namespace stereogt
