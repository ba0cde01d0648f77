#pragma once

#include <cstddef>

#include "stereogt/image.hpp"

namespace stereogt {

struct StereoMetrics {
  double bad2 = 0.0, bad4 = 0.0, bad6 = 0.0, bad8 = 0.0;  ///< percent
  double mae = 0.0, rmse = 0.0;                           ///< pixels, over predicted pixels
  std::size_t count = 0;    ///< evaluated pixels (valid in gt and mask)
  std::size_t missing = 0;  ///< of those, invalid in the prediction
};

/// Evaluates over pixels valid in `gt` (and set in `mask`). Pixels missing in
/// the prediction count as errors above every threshold and are left out of
/// MAE/RMSE (NaN when nothing was predicted).
/// Throws EmptyStratumError when no pixel is evaluable.
StereoMetrics stereo_metrics(const DisparityMap& pred, const DisparityMap& gt, const Mask* mask = nullptr);

struct MonoMetrics {
  double delta105 = 0.0, delta115 = 0.0, delta125 = 0.0;  ///< percent
  double mae = 0.0, abs_rel = 0.0, rmse = 0.0;
  std::size_t count = 0;     ///< evaluated pixels
  std::size_t excluded = 0;  ///< valid in gt and mask but invalid or non-positive in the prediction
};

/// Throws EmptyStratumError when no pixel is evaluable.
MonoMetrics mono_metrics(const DepthMap& pred, const DepthMap& gt, const Mask* mask = nullptr);

enum class AlignSpace { depth, inverse_depth };

struct Alignment {
  double scale = 0.0;
  double shift = 0.0;
  bool degenerate = false;
  std::size_t count = 0;     ///< pixels used in the fit
  std::size_t nonpositive = 0;  ///< pixels dropped because the aligned depth is <= 0
  DepthMap aligned;
};

/// Least-squares s, t minimizing sum (s*p + t - g)^2 over pixels valid in
/// both maps and the mask, in the chosen space. A constant prediction gives
/// s = 0, t = mean(g), flagged degenerate. Throws EmptyStratumError when no
/// pixel is usable.
Alignment scale_shift_align(const DepthMap& pred, const DepthMap& gt, const Mask* mask = nullptr,
                            AlignSpace space = AlignSpace::depth);

/// RMS distance of region disparities to their least-squares plane
/// d = a*u + b*v + c. Throws DegenerateRegionError for fewer than three
/// non-collinear pixels.
double plane_fit_residual(const DisparityMap& disp, const Mask& region);

struct InlierStats {
  double inlier_percent = 0.0;
  double inlier_rmse = 0.0;  ///< NaN when there are no inliers
  std::size_t count = 0;     ///< mutually valid pixels
  std::size_t inliers = 0;
};

/// |a - b| < threshold counts as inlier. Throws EmptyStratumError without
/// mutually valid pixels.
InlierStats depth_inlier_compare(const DepthMap& a, const DepthMap& b, double threshold_m);

}  // namespace stereogt
