#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stereogt/census.hpp"

namespace stereogt {

/// Which image the disparity is measured from. For left_reference the match
/// of (x, y) is (x - d, y) in the target; for right_reference it is (x + d, y).
enum class MatchDirection { left_reference, right_reference };

/// H x W x (d_max + 1) matching costs (lower is better), disparity fastest.
class CostVolume {
 public:
  CostVolume() = default;
  CostVolume(int width, int height, int d_max, float fill = 0.0f);

  [[nodiscard]] int width() const noexcept { return width_; }
  [[nodiscard]] int height() const noexcept { return height_; }
  [[nodiscard]] int d_max() const noexcept { return d_max_; }
  [[nodiscard]] int disparities() const noexcept { return d_max_ + 1; }
  [[nodiscard]] int frame_count() const noexcept { return frame_count_; }
  void set_frame_count(int n);

  float& at(int x, int y, int d) noexcept { return costs_[offset(x, y) + static_cast<std::size_t>(d)]; }
  float at(int x, int y, int d) const noexcept { return costs_[offset(x, y) + static_cast<std::size_t>(d)]; }

  std::span<float> costs(int x, int y) noexcept {
    return {costs_.data() + offset(x, y), static_cast<std::size_t>(disparities())};
  }
  std::span<const float> costs(int x, int y) const noexcept {
    return {costs_.data() + offset(x, y), static_cast<std::size_t>(disparities())};
  }
  std::span<float> data() noexcept { return costs_; }
  std::span<const float> data() const noexcept { return costs_; }

  [[nodiscard]] bool same_shape(const CostVolume& o) const noexcept {
    return width_ == o.width_ && height_ == o.height_ && d_max_ == o.d_max_;
  }

 private:
  [[nodiscard]] std::size_t offset(int x, int y) const noexcept {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) *
           static_cast<std::size_t>(d_max_ + 1);
  }

  int width_ = 0;
  int height_ = 0;
  int d_max_ = 0;
  int frame_count_ = 1;
  std::vector<float> costs_;
};

/// Hamming cost between reference and target descriptors along the scanline.
/// Candidates falling outside the target get `bits` (the maximum).
/// Throws ShapeError on size mismatch and RangeError when d_max >= width.
CostVolume build_cost_volume(const CensusImage& ref, const CensusImage& tgt, int d_max, int bits,
                             MatchDirection direction = MatchDirection::left_reference);

/// Element-wise mean weighted by each input's frame count; the result's
/// frame count is the sum. Throws ArgumentError on an empty list and
/// ShapeError on mismatched shapes.
CostVolume accumulate_volumes(std::span<const CostVolume> volumes);

/// Streaming form of accumulate_volumes for long frame sequences.
class VolumeAccumulator {
 public:
  void add(const CostVolume& vol);
  [[nodiscard]] int frame_count() const noexcept { return frames_; }
  /// Throws ArgumentError when nothing was added.
  [[nodiscard]] CostVolume mean() const;

 private:
  int width_ = 0;
  int height_ = 0;
  int d_max_ = 0;
  std::vector<double> acc_;
  int frames_ = 0;
};

}  // namespace stereogt
