#pragma once

#include <optional>
#include <span>
#include <vector>

#include "stereogt/census.hpp"
#include "stereogt/cost_volume.hpp"
#include "stereogt/disparity_ops.hpp"
#include "stereogt/sgm.hpp"

namespace stereogt {

struct MatcherParams {
  CensusWindow census{};
  int d_max = 64;
  std::optional<float> p1;  ///< defaults to 8*bits/64
  std::optional<float> p2;  ///< defaults to 32*bits/64
  int paths = 8;
  /// Share of the single-frame volume in each per-frame decode; the rest
  /// comes from the accumulated volume.
  double frame_weight = 0.5;
  /// Replace the fused mean by the dominant mode of a two-Laplacian fit.
  bool select_bimodal_mode = false;

  [[nodiscard]] SgmParams sgm() const;
  void validate() const;
};

/// Integer disparity from SGM(volume), sub-pixel offset from the volume
/// itself.
DisparityMap decode_volume(const CostVolume& vol, const MatcherParams& params);

/// Census + cost volume + decode of one image pair.
DisparityMap match_single(const ImageF& ref, const ImageF& tgt, const MatcherParams& params,
                          MatchDirection direction = MatchDirection::left_reference);

struct SpaceTimeResult {
  DisparityMap accumulated;              ///< decode of the averaged volume
  std::vector<DisparityMap> per_frame;   ///< d^t
  FusedDisparity fused;                  ///< d*, u* over per_frame
};

/// Accumulates per-frame volumes into C*, decodes it, decodes each frame
/// against C*, and fuses the per-frame decodes.
/// Throws ArgumentError on empty or unequal-length sequences.
SpaceTimeResult match_spacetime(std::span<const ImageF> ref_frames, std::span<const ImageF> tgt_frames,
                                const MatcherParams& params,
                                MatchDirection direction = MatchDirection::left_reference);

/// Per pixel, the dominant mode of a two-Laplacian fit over the valid frames.
DisparityMap select_modes(std::span<const DisparityMap> per_frame, const FusedDisparity& fused);

}  // namespace stereogt
