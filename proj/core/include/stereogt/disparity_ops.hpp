#pragma once

#include <cstdint>
#include <span>

#include "stereogt/cost_volume.hpp"
#include "stereogt/image.hpp"

namespace stereogt {

/// Winner-takes-all with parabola refinement. Ties go to the smaller
/// disparity; d = 0 and d = d_max keep their integer value. A pixel is valid
/// iff its refined disparity is positive.
DisparityMap wta_subpixel(const CostVolume& costs);

/// Integer disparity from `select`, parabola offset from the costs of
/// `refine` around it. Throws ShapeError unless the volumes match.
DisparityMap wta_subpixel(const CostVolume& select, const CostVolume& refine);

/// Sub-pixel offset of the parabola through (-1, cm), (0, c0), (1, cp).
/// Returns 0 when the parabola is not convex.
double parabola_offset(double cm, double c0, double cp) noexcept;

struct FusedDisparity {
  DisparityMap disparity;  ///< mean, with population variance attached
  Image<std::uint16_t> count;
};

/// Per-pixel mean and population variance over the valid inputs. A pixel is
/// kept when at least max(2, T/4) maps are valid there (capped at T).
FusedDisparity fuse_disparities(std::span<const DisparityMap> maps);

struct ConsistencyMasks {
  Mask left;
  Mask right;
};

/// Left pixel (x, y) is consistent iff d_R at (x - round(d_L), y) is valid and
/// within `threshold`; symmetrically for the right map with x + round(d_R).
ConsistencyMasks lr_consistency(const DisparityMap& left, const DisparityMap& right, double threshold = 2.0);

}  // namespace stereogt
