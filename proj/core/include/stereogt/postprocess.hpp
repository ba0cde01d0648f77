#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "stereogt/disparity_ops.hpp"
#include "stereogt/image.hpp"
#include "stereogt/rectification.hpp"

namespace stereogt {

/// Per-pixel material class 0..3, 255 = unlabeled.
using MaterialMask = Image<std::uint8_t>;
inline constexpr std::uint8_t kUnlabeled = 255;

[[nodiscard]] bool is_material_value(std::uint8_t v) noexcept;
/// Throws FormatError when a value lies outside {0, 1, 2, 3, 255}.
void validate_material_mask(const MaterialMask& mask, const std::string& source = "<mask>");

/// 1 where the fused disparity is valid and its variance is at most tau_var.
/// Throws ArgumentError unless tau_var > 0.
Mask variance_filter(const FusedDisparity& fused, double tau_var = 1.0);

/// Invalidates every pixel not set in `keep`.
DisparityMap restrict_to(const DisparityMap& disp, const Mask& keep);

/// Invalidates every pixel set in `removal`.
DisparityMap apply_manual_mask(const DisparityMap& disp, const Mask& removal);

struct BilateralParams {
  int window = 35;
  double sigma_color = 5.0;
  double sigma_dist = 50.0;
};

/// Joint bilateral filter guided by `guide`. Only valid neighbours
/// contribute and invalid pixels stay invalid.
DisparityMap bilateral_smooth(const DisparityMap& disp, const ImageF& guide, const BilateralParams& params = {});

/// Rotation-only homography between the rectified L views of two rigs,
/// A_LC * R_LC * R_LR^T * A_LR^-1.
Eigen::Matrix3d lr_to_lc_homography(const RectifiedSetup& lr, const RectifiedSetup& lc);

/// Disparity of the L-R rig's reference view converted into the L-C rig's
/// reference view: to depth, rotate into the L-C frame, backward warp the
/// depths with the homography (nearest), back to disparity with f_LC * b_LC.
DisparityMap warp_disparity_lr_to_lc(const DisparityMap& disp_lr, const RectifiedSetup& lr,
                                     const RectifiedSetup& lc);

/// Nearest-neighbour backward warp of class labels; `src_to_dst` maps source
/// pixels to output pixels. Pixels without a source become kUnlabeled.
MaterialMask warp_labels(const MaterialMask& mask, const Eigen::Matrix3d& src_to_dst, int out_width,
                         int out_height);

MaterialMask warp_mask_lr_to_lc(const MaterialMask& mask, const RectifiedSetup& lr, const RectifiedSetup& lc);

}  // namespace stereogt
