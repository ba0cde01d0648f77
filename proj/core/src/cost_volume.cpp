#include "stereogt/cost_volume.hpp"

#include <bit>

namespace stereogt {

CostVolume::CostVolume(int width, int height, int d_max, float fill)
    : width_(width), height_(height), d_max_(d_max) {
  if (width < 0 || height < 0 || d_max < 0) throw ArgumentError("cost volume dimensions must be non-negative");
  costs_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) *
                    static_cast<std::size_t>(d_max + 1),
                fill);
}

void CostVolume::set_frame_count(int n) {
  if (n < 1) throw ArgumentError("frame count must be at least 1");
  frame_count_ = n;
}

CostVolume build_cost_volume(const CensusImage& ref, const CensusImage& tgt, int d_max, int bits,
                             MatchDirection direction) {
  require_same_shape(ref, tgt, "build_cost_volume");
  const int W = ref.width(), H = ref.height();
  if (d_max < 0 || d_max >= W) {
    throw RangeError("build_cost_volume: d_max " + std::to_string(d_max) + " must be in [0, width)");
  }
  CostVolume vol(W, H, d_max, static_cast<float>(bits));
  const int sign = direction == MatchDirection::left_reference ? -1 : 1;
  for (int y = 0; y < H; ++y) {
    const auto rrow = ref.row(y);
    const auto trow = tgt.row(y);
    for (int x = 0; x < W; ++x) {
      auto c = vol.costs(x, y);
      const std::uint64_t r = rrow[static_cast<std::size_t>(x)];
      for (int d = 0; d <= d_max; ++d) {
        const int xt = x + sign * d;
        if (xt < 0 || xt >= W) break;
        c[static_cast<std::size_t>(d)] =
            static_cast<float>(std::popcount(r ^ trow[static_cast<std::size_t>(xt)]));
      }
    }
  }
  return vol;
}

CostVolume accumulate_volumes(std::span<const CostVolume> volumes) {
  if (volumes.empty()) throw ArgumentError("accumulate_volumes: empty volume list");
  VolumeAccumulator acc;
  for (const auto& v : volumes) acc.add(v);
  return acc.mean();
}

void VolumeAccumulator::add(const CostVolume& vol) {
  if (frames_ == 0) {
    width_ = vol.width();
    height_ = vol.height();
    d_max_ = vol.d_max();
    acc_.assign(vol.data().size(), 0.0);
  } else if (vol.width() != width_ || vol.height() != height_ || vol.d_max() != d_max_) {
    throw ShapeError("accumulate_volumes: volume shapes differ");
  }
  const double w = vol.frame_count();
  const auto src = vol.data();
  for (std::size_t i = 0; i < src.size(); ++i) acc_[i] += w * src[i];
  frames_ += vol.frame_count();
}

CostVolume VolumeAccumulator::mean() const {
  if (frames_ == 0) throw ArgumentError("accumulate_volumes: empty volume list");
  CostVolume out(width_, height_, d_max_);
  auto dst = out.data();
  const double inv = 1.0 / frames_;
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = static_cast<float>(acc_[i] * inv);
  out.set_frame_count(frames_);
  return out;
}

}  // namespace stereogt
