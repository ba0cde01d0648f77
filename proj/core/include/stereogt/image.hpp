#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stereogt/errors.hpp"

namespace stereogt {

/// Dense row-major single-channel raster.
template <class T>
class Image {
 public:
  using value_type = T;

  Image() = default;
  Image(int width, int height, T fill = T{})
      : width_(width), height_(height),
        data_(static_cast<std::size_t>(checked_area(width, height)), fill) {}

  [[nodiscard]] int width() const noexcept { return width_; }
  [[nodiscard]] int height() const noexcept { return height_; }
  [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
  [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

  [[nodiscard]] bool in_bounds(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  T& operator()(int x, int y) noexcept { return data_[index(x, y)]; }
  const T& operator()(int x, int y) const noexcept { return data_[index(x, y)]; }

  std::span<T> row(int y) noexcept {
    return {data_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)};
  }
  std::span<const T> row(int y) const noexcept {
    return {data_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)};
  }

  std::span<T> pixels() noexcept { return data_; }
  std::span<const T> pixels() const noexcept { return data_; }
  T* data() noexcept { return data_.data(); }
  const T* data() const noexcept { return data_.data(); }

  void fill(T v) { std::fill(data_.begin(), data_.end(), v); }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  static long long checked_area(int w, int h) {
    if (w < 0 || h < 0) throw ArgumentError("image dimensions must be non-negative");
    return static_cast<long long>(w) * h;
  }
  [[nodiscard]] std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

using ImageF = Image<float>;
using Mask = Image<std::uint8_t>;

template <class A, class B>
bool same_shape(const Image<A>& a, const Image<B>& b) noexcept {
  return a.width() == b.width() && a.height() == b.height();
}

template <class A, class B>
void require_same_shape(const Image<A>& a, const Image<B>& b, const char* what) {
  if (!same_shape(a, b)) {
    throw ShapeError(std::string(what) + ": size mismatch (" + std::to_string(a.width()) + "x" +
                     std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                     std::to_string(b.height()) + ")");
  }
}

/// Per-pixel scalar field with a validity mask and an optional variance
/// channel. The tag keeps disparities (pixels) and depths (meters) apart.
template <class Tag>
struct ScalarMap {
  Image<double> values;
  Mask valid;
  std::optional<Image<double>> variance;

  ScalarMap() = default;
  ScalarMap(int width, int height) : values(width, height, 0.0), valid(width, height, 0) {}

  [[nodiscard]] int width() const noexcept { return values.width(); }
  [[nodiscard]] int height() const noexcept { return values.height(); }

  [[nodiscard]] bool is_valid(int x, int y) const noexcept { return valid(x, y) != 0; }

  void set(int x, int y, double v) {
    values(x, y) = v;
    valid(x, y) = 1;
  }
  void invalidate(int x, int y) {
    values(x, y) = 0.0;
    valid(x, y) = 0;
  }

  [[nodiscard]] std::size_t valid_count() const noexcept {
    std::size_t n = 0;
    for (auto v : valid.pixels()) n += v != 0;
    return n;
  }

  /// Valid pixels must hold finite, strictly positive values; the variance,
  /// when present, must be non-negative there.
  [[nodiscard]] bool satisfies_invariants() const {
    if (!same_shape(values, valid)) return false;
    if (variance && !same_shape(*variance, values)) return false;
    for (int y = 0; y < height(); ++y) {
      for (int x = 0; x < width(); ++x) {
        if (!is_valid(x, y)) continue;
        const double v = values(x, y);
        if (!std::isfinite(v) || v <= 0.0) return false;
        if (variance && !((*variance)(x, y) >= 0.0)) return false;
      }
    }
    return true;
  }
};

struct DisparityTag {};
struct DepthTag {};
using DisparityMap = ScalarMap<DisparityTag>;
using DepthMap = ScalarMap<DepthTag>;

}  // namespace stereogt
