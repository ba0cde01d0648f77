#include "stereogt/spacetime.hpp"

#include "stereogt/bimodal.hpp"

namespace stereogt {

SgmParams MatcherParams::sgm() const {
  SgmParams s = SgmParams::for_bits(census.bits());
  if (p1) s.p1 = *p1;
  if (p2) s.p2 = *p2;
  s.paths = paths;
  return s;
}

void MatcherParams::validate() const {
  census.validate();
  if (d_max < 1) throw ArgumentError("d_max must be positive");
  if (!(frame_weight >= 0.0 && frame_weight <= 1.0)) throw ArgumentError("frame_weight must lie in [0, 1]");
  sgm().validate();
}

DisparityMap decode_volume(const CostVolume& vol, const MatcherParams& params) {
  return wta_subpixel(sgm_aggregate(vol, params.sgm()), vol);
}

DisparityMap match_single(const ImageF& ref, const ImageF& tgt, const MatcherParams& params,
                          MatchDirection direction) {
  params.validate();
  require_same_shape(ref, tgt, "match_single");
  const auto cr = census_transform(ref, params.census);
  const auto ct = census_transform(tgt, params.census);
  return decode_volume(build_cost_volume(cr, ct, params.d_max, params.census.bits(), direction), params);
}

SpaceTimeResult match_spacetime(std::span<const ImageF> ref_frames, std::span<const ImageF> tgt_frames,
                                const MatcherParams& params, MatchDirection direction) {
  params.validate();
  if (ref_frames.empty()) throw ArgumentError("match_spacetime: no frames");
  if (ref_frames.size() != tgt_frames.size()) throw ArgumentError("match_spacetime: frame counts differ");
  const int bits = params.census.bits();

  std::vector<CensusImage> cref, ctgt;
  cref.reserve(ref_frames.size());
  ctgt.reserve(ref_frames.size());
  VolumeAccumulator acc;
  for (std::size_t t = 0; t < ref_frames.size(); ++t) {
    require_same_shape(ref_frames[t], ref_frames.front(), "match_spacetime");
    require_same_shape(tgt_frames[t], ref_frames.front(), "match_spacetime");
    cref.push_back(census_transform(ref_frames[t], params.census));
    ctgt.push_back(census_transform(tgt_frames[t], params.census));
    acc.add(build_cost_volume(cref.back(), ctgt.back(), params.d_max, bits, direction));
  }
  const CostVolume accumulated = acc.mean();

  SpaceTimeResult out;
  out.accumulated = decode_volume(accumulated, params);
  const auto w = static_cast<float>(params.frame_weight);
  for (std::size_t t = 0; t < cref.size(); ++t) {
    CostVolume v = build_cost_volume(cref[t], ctgt[t], params.d_max, bits, direction);
    auto dst = v.data();
    const auto src = accumulated.data();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = (1.0f - w) * src[i] + w * dst[i];
    out.per_frame.push_back(decode_volume(v, params));
  }
  out.fused = fuse_disparities(out.per_frame);
  if (params.select_bimodal_mode) {
    DisparityMap modes = select_modes(out.per_frame, out.fused);
    modes.variance = std::move(out.fused.disparity.variance);
    out.fused.disparity = std::move(modes);
  }
  return out;
}

DisparityMap select_modes(std::span<const DisparityMap> per_frame, const FusedDisparity& fused) {
  const int W = fused.disparity.width(), H = fused.disparity.height();
  DisparityMap out(W, H);
  std::vector<double> samples;
  for (int y = 0; y < H; ++y) {
    for (int x = 0; x < W; ++x) {
      if (!fused.disparity.is_valid(x, y)) continue;
      samples.clear();
      for (const auto& m : per_frame) {
        if (m.is_valid(x, y)) samples.push_back(m.values(x, y));
      }
      const double d = bimodal_fit_and_select(samples);
      if (d > 0.0) out.set(x, y, d);
    }
  }
  return out;
}

}  // namespace stereogt
