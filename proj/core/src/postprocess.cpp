#include "stereogt/postprocess.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "stereogt/warp.hpp"

namespace stereogt {

bool is_material_value(std::uint8_t v) noexcept { return v <= 3 || v == kUnlabeled; }

void validate_material_mask(const MaterialMask& mask, const std::string& source) {
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!is_material_value(mask(x, y))) {
        throw FormatError(source + ": material class " + std::to_string(mask(x, y)) + " at (" +
                          std::to_string(x) + ", " + std::to_string(y) + ")");
      }
    }
  }
}

Mask variance_filter(const FusedDisparity& fused, double tau_var) {
  if (!(tau_var > 0.0)) throw ArgumentError("variance_filter: tau_var must be positive");
  const auto& d = fused.disparity;
  Mask keep(d.width(), d.height(), 0);
  for (int y = 0; y < d.height(); ++y) {
    for (int x = 0; x < d.width(); ++x) {
      if (!d.is_valid(x, y)) continue;
      if (d.variance && (*d.variance)(x, y) > tau_var) continue;
      keep(x, y) = 1;
    }
  }
  return keep;
}

DisparityMap restrict_to(const DisparityMap& disp, const Mask& keep) {
  require_same_shape(disp.values, keep, "restrict_to");
  DisparityMap out = disp;
  for (int y = 0; y < disp.height(); ++y) {
    for (int x = 0; x < disp.width(); ++x) {
      if (!keep(x, y)) out.invalidate(x, y);
    }
  }
  return out;
}

DisparityMap apply_manual_mask(const DisparityMap& disp, const Mask& removal) {
  require_same_shape(disp.values, removal, "apply_manual_mask");
  DisparityMap out = disp;
  for (int y = 0; y < disp.height(); ++y) {
    for (int x = 0; x < disp.width(); ++x) {
      if (removal(x, y)) out.invalidate(x, y);
    }
  }
  return out;
}

DisparityMap bilateral_smooth(const DisparityMap& disp, const ImageF& guide, const BilateralParams& params) {
  require_same_shape(disp.values, guide, "bilateral_smooth");
  if (params.window < 1 || params.window % 2 == 0) throw ArgumentError("bilateral window must be odd");
  if (!(params.sigma_color > 0.0) || !(params.sigma_dist > 0.0)) throw ArgumentError("bilateral sigmas must be positive");
  const int W = disp.width(), H = disp.height(), r = params.window / 2;
  const int side = 2 * r + 1;
  std::vector<double> spatial(static_cast<std::size_t>(side * side));
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      spatial[static_cast<std::size_t>((dy + r) * side + dx + r)] =
          std::exp(-(dx * dx + dy * dy) / (2.0 * params.sigma_dist * params.sigma_dist));
    }
  }
  const double color_k = -1.0 / (2.0 * params.sigma_color * params.sigma_color);

  DisparityMap out = disp;
  for (int y = 0; y < H; ++y) {
    for (int x = 0; x < W; ++x) {
      if (!disp.is_valid(x, y)) continue;
      const double gc = guide(x, y);
      double wsum = 0.0, vsum = 0.0;
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (int yy = std::max(0, y - r); yy <= std::min(H - 1, y + r); ++yy) {
        const double* srow = spatial.data() + static_cast<std::size_t>((yy - y + r) * side + r - x);
        for (int xx = std::max(0, x - r); xx <= std::min(W - 1, x + r); ++xx) {
          if (!disp.valid(xx, yy)) continue;
          const double dc = guide(xx, yy) - gc;
          const double w = srow[xx] * std::exp(color_k * dc * dc);
          const double v = disp.values(xx, yy);
          wsum += w;
          vsum += w * v;
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      }
      if (wsum > 0.0) out.values(x, y) = std::clamp(vsum / wsum, lo, hi);
    }
  }
  return out;
}

Eigen::Matrix3d lr_to_lc_homography(const RectifiedSetup& lr, const RectifiedSetup& lc) {
  return lr_to_lc_mapping(lr, lc);
}

DisparityMap warp_disparity_lr_to_lc(const DisparityMap& disp_lr, const RectifiedSetup& lr,
                                     const RectifiedSetup& lc) {
  if (disp_lr.width() != lr.ref.width || disp_lr.height() != lr.ref.height) {
    throw ShapeError("warp_disparity_lr_to_lc: disparity size differs from the L-R reference view");
  }
  const double fb_lr = lr.ref.focal() * lr.baseline;
  const double fb_lc = lc.ref.focal() * lc.baseline;
  if (!(fb_lr > 0.0) || !(fb_lc > 0.0)) throw ArgumentError("warp_disparity_lr_to_lc: non-positive focal or baseline");

  // With D = f_LR*b_LR/disp, the rotated point has z' = D * zf(x, y). The map
  // below holds f_LR*b_LR/z' so that the identity chain is exact.
  const Eigen::Matrix3d A_inv = lr.ref.K.inverse();
  const Eigen::Matrix3d R =
      lc.ref.R == lr.ref.R ? Eigen::Matrix3d::Identity().eval() : (lc.ref.R * lr.ref.R.transpose()).eval();
  const Eigen::RowVector3d z_row = R.row(2) * A_inv;
  DisparityMap inv_z(disp_lr.width(), disp_lr.height());
  for (int y = 0; y < disp_lr.height(); ++y) {
    for (int x = 0; x < disp_lr.width(); ++x) {
      if (!disp_lr.is_valid(x, y) || disp_lr.values(x, y) <= kMinPositive) continue;
      const double zf = z_row.dot(Eigen::Vector3d(x, y, 1.0));
      const double v = disp_lr.values(x, y) / zf;
      if (zf > 0.0 && std::isfinite(v)) inv_z.set(x, y, v);
    }
  }

  const Eigen::Matrix3d H = lr_to_lc_homography(lr, lc);
  const WarpField field = WarpField::from_homography(H.inverse(), lc.ref.width, lc.ref.height);
  const double ratio = fb_lc / fb_lr;
  DisparityMap out(lc.ref.width, lc.ref.height);
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      std::uint8_t ok = 0;
      if (!sample(inv_z.valid, field.src_x(x, y), field.src_y(x, y), Interp::nearest, ok) || !ok) continue;
      double v = 0.0;
      sample(inv_z.values, field.src_x(x, y), field.src_y(x, y), Interp::nearest, v);
      const double d = ratio * v;
      if (d > kMinPositive) out.set(x, y, d);
    }
  }
  return out;
}

MaterialMask warp_labels(const MaterialMask& mask, const Eigen::Matrix3d& src_to_dst, int out_width,
                         int out_height) {
  const WarpField field = WarpField::from_homography(src_to_dst.inverse(), out_width, out_height);
  return warp_image(mask, field, Interp::nearest, kUnlabeled);
}

MaterialMask warp_mask_lr_to_lc(const MaterialMask& mask, const RectifiedSetup& lr, const RectifiedSetup& lc) {
  return warp_labels(mask, lr_to_lc_homography(lr, lc), lc.ref.width, lc.ref.height);
}

}  // namespace stereogt
