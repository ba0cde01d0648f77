#pragma once

#include "stereogt/cost_volume.hpp"

namespace stereogt {

struct SgmParams {
  float p1 = 8.0f;
  float p2 = 32.0f;
  int paths = 8;

  /// Penalties scaled to the descriptor bit width.
  static SgmParams for_bits(int bits);
  /// Throws ArgumentError unless 0 <= p1 <= p2 and paths is 4 or 8.
  void validate() const;
};

/// Semi-global aggregation: sum over paths r of
///   L_r(p, d) = C(p, d) + min(L_r(p-r, d), L_r(p-r, d+-1) + p1, min_k L_r(p-r, k) + p2)
///               - min_k L_r(p-r, k)
/// with L_r = C on the first pixel of each path.
CostVolume sgm_aggregate(const CostVolume& costs, const SgmParams& params);

}  // namespace stereogt
