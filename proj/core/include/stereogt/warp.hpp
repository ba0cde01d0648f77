#pragma once

#include <cmath>
#include <limits>
#include <type_traits>

#include <Eigen/Core>

#include "stereogt/image.hpp"

namespace stereogt {

enum class Interp { nearest, bilinear };

/// Source coordinate for every output pixel of a backward warp. Pixel
/// centers sit on integer coordinates; NaN marks "no source".
struct WarpField {
  Image<double> src_x;
  Image<double> src_y;

  WarpField() = default;
  WarpField(int width, int height)
      : src_x(width, height, std::numeric_limits<double>::quiet_NaN()),
        src_y(width, height, std::numeric_limits<double>::quiet_NaN()) {}

  [[nodiscard]] int width() const noexcept { return src_x.width(); }
  [[nodiscard]] int height() const noexcept { return src_x.height(); }
  [[nodiscard]] bool has_source(int x, int y) const noexcept {
    return std::isfinite(src_x(x, y)) && std::isfinite(src_y(x, y));
  }

  static WarpField identity(int width, int height);
  static WarpField translation(int width, int height, double dx, double dy);
  /// `out_to_src` maps homogeneous output pixels to source pixels.
  static WarpField from_homography(const Eigen::Matrix3d& out_to_src, int width, int height);
};

namespace detail {

inline constexpr double kEdgeSlack = 1e-6;

inline bool nearest_index(double s, int n, int& i) {
  if (!std::isfinite(s)) return false;
  const double r = std::floor(s + 0.5);
  if (r < 0.0 || r > n - 1) return false;
  i = static_cast<int>(r);
  return true;
}

inline bool bilinear_index(double s, int n, int& i0, double& frac) {
  if (!std::isfinite(s)) return false;
  if (s < -kEdgeSlack || s > (n - 1) + kEdgeSlack) return false;
  s = std::clamp(s, 0.0, static_cast<double>(n - 1));
  i0 = static_cast<int>(std::floor(s));
  if (i0 >= n - 1) {
    i0 = n - 1;
    frac = 0.0;
  } else {
    frac = s - i0;
  }
  return true;
}

}  // namespace detail

/// Samples `src` at one (possibly fractional) location. Returns false when
/// the location falls outside the image.
template <class T>
bool sample(const Image<T>& src, double sx, double sy, Interp interp, T& out) {
  if (interp == Interp::nearest || !std::is_floating_point_v<T>) {
    int ix = 0, iy = 0;
    if (!detail::nearest_index(sx, src.width(), ix) || !detail::nearest_index(sy, src.height(), iy)) {
      return false;
    }
    out = src(ix, iy);
    return true;
  }
  int x0 = 0, y0 = 0;
  double fx = 0.0, fy = 0.0;
  if (!detail::bilinear_index(sx, src.width(), x0, fx) ||
      !detail::bilinear_index(sy, src.height(), y0, fy)) {
    return false;
  }
  const int x1 = fx > 0.0 ? x0 + 1 : x0;
  const int y1 = fy > 0.0 ? y0 + 1 : y0;
  const double top = (1.0 - fx) * src(x0, y0) + fx * src(x1, y0);
  const double bot = (1.0 - fx) * src(x0, y1) + fx * src(x1, y1);
  out = static_cast<T>((1.0 - fy) * top + fy * bot);
  return true;
}

/// Backward warp. Output pixels without an in-bounds source get `fill`.
/// Integer-valued images are always sampled with nearest neighbour.
template <class T>
Image<T> warp_image(const Image<T>& src, const WarpField& warp, Interp interp, T fill = T{},
                    Mask* valid_out = nullptr) {
  Image<T> out(warp.width(), warp.height(), fill);
  if (valid_out) *valid_out = Mask(warp.width(), warp.height(), 0);
  for (int y = 0; y < warp.height(); ++y) {
    for (int x = 0; x < warp.width(); ++x) {
      T v{};
      if (sample(src, warp.src_x(x, y), warp.src_y(x, y), interp, v)) {
        out(x, y) = v;
        if (valid_out) (*valid_out)(x, y) = 1;
      }
    }
  }
  return out;
}

}  // namespace stereogt
