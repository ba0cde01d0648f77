#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stereogt/metrics.hpp"

namespace stereogt {

enum class EvalKind { stereo, mono };

/// One line of an evaluation report. Fields that do not apply to the
/// report's kind hold NaN.
struct StratumRecord {
  std::string stratum;
  bool empty = false;
  std::size_t pixel_count = 0;
  std::size_t excluded = 0;  ///< missing (stereo) or excluded (mono) pixels
  double bad2, bad4, bad6, bad8;
  double mae, rmse;
  double delta105, delta115, delta125;
  double abs_rel;

  StratumRecord();
};

struct EvalReport {
  EvalKind kind = EvalKind::stereo;
  std::vector<StratumRecord> records;

  [[nodiscard]] const StratumRecord* find(std::string_view stratum) const;

  /// One record per line:
  ///   kind=<stereo|mono> stratum=<name> empty=<0|1> count=<n> excluded=<n>
  ///   bad2= bad4= bad6= bad8= mae= rmse= delta105= delta115= delta125= abs_rel=
  [[nodiscard]] std::string to_text() const;
  /// Column-aligned table for terminals.
  [[nodiscard]] std::string to_table() const;
  static EvalReport parse(std::string_view text, const std::string& source = "<report>");
};

/// Masks that define the strata. `material` yields class0..class3 records.
struct Strata {
  const Mask* consistency = nullptr;
  const Mask* material = nullptr;
  std::vector<std::pair<std::string, Mask>> custom;
};

/// Records for all, cons, class0..class3 and custom strata. Strata without
/// evaluable pixels are flagged empty.
EvalReport stratify_stereo(const DisparityMap& pred, const DisparityMap& gt, const Strata& strata);

/// Aligns once on the `all` stratum, then evaluates every stratum on the
/// aligned prediction.
EvalReport stratify_mono(const DepthMap& pred, const DepthMap& gt, const Strata& strata,
                         AlignSpace space = AlignSpace::depth);

enum class EvalMode { full, quarter };

/// Brings prediction and ground truth to a common resolution by integer
/// nearest-neighbour resampling. Full mode resamples the prediction to the gt
/// size; quarter mode first reduces gt by 4. Disparity values are scaled by
/// the resampling factor. Throws ResolutionError for non-integer ratios.
std::pair<DisparityMap, DisparityMap> prepare_resolutions(const DisparityMap& pred, const DisparityMap& gt,
                                                          EvalMode mode);
/// Depth variant; values are never rescaled.
std::pair<DepthMap, DepthMap> prepare_resolutions(const DepthMap& pred, const DepthMap& gt, EvalMode mode);

/// Nearest resampling of a map to width x height (an integer multiple or
/// divisor of its size). Downsampling by k reads pixel k*x + k/2.
DisparityMap resample_disparity(const DisparityMap& disp, int width, int height);
DepthMap resample_depth(const DepthMap& depth, int width, int height);
Mask resample_mask(const Mask& mask, int width, int height);

}  // namespace stereogt
