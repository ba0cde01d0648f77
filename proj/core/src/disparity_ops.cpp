#include "stereogt/disparity_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace stereogt {

double parabola_offset(double cm, double c0, double cp) noexcept {
  const double denom = cm + cp - 2.0 * c0;
  if (!(denom > 0.0)) return 0.0;
  return std::clamp((cm - cp) / (2.0 * denom), -0.5, 0.5);
}

DisparityMap wta_subpixel(const CostVolume& costs) { return wta_subpixel(costs, costs); }

DisparityMap wta_subpixel(const CostVolume& select, const CostVolume& refine) {
  if (!select.same_shape(refine)) throw ShapeError("wta_subpixel: volume shapes differ");
  const int W = select.width(), H = select.height(), D = select.disparities();
  DisparityMap out(W, H);
  for (int y = 0; y < H; ++y) {
    for (int x = 0; x < W; ++x) {
      const auto c = select.costs(x, y);
      int best = 0;
      for (int d = 1; d < D; ++d) {
        if (c[static_cast<std::size_t>(d)] < c[static_cast<std::size_t>(best)]) best = d;
      }
      double disp = best;
      if (best > 0 && best + 1 < D) {
        const auto b = static_cast<std::size_t>(best);
        const auto r = refine.costs(x, y);
        disp += parabola_offset(r[b - 1], r[b], r[b + 1]);
      }
      if (disp > 0.0) out.set(x, y, disp);
    }
  }
  return out;
}

FusedDisparity fuse_disparities(std::span<const DisparityMap> maps) {
  if (maps.empty()) throw ArgumentError("fuse_disparities: empty map list");
  const int W = maps.front().width(), H = maps.front().height();
  for (const auto& m : maps) {
    if (m.width() != W || m.height() != H) throw ShapeError("fuse_disparities: map shapes differ");
  }
  const int T = static_cast<int>(maps.size());
  const double required = std::min<double>(T, std::max(2.0, T / 4.0));

  FusedDisparity out{DisparityMap(W, H), Image<std::uint16_t>(W, H, 0)};
  Image<double> var(W, H, 0.0);
  for (int y = 0; y < H; ++y) {
    for (int x = 0; x < W; ++x) {
      int n = 0;
      double sum = 0.0;
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (const auto& m : maps) {
        if (!m.is_valid(x, y)) continue;
        const double v = m.values(x, y);
        ++n;
        sum += v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      out.count(x, y) = static_cast<std::uint16_t>(n);
      if (n < required) continue;
      if (lo == hi) {
        out.disparity.set(x, y, lo);
        continue;
      }
      const double mean = sum / n;
      double ss = 0.0;
      for (const auto& m : maps) {
        if (!m.is_valid(x, y)) continue;
        const double e = m.values(x, y) - mean;
        ss += e * e;
      }
      if (mean > 0.0) {
        out.disparity.set(x, y, mean);
        var(x, y) = ss / n;
      }
    }
  }
  out.disparity.variance = std::move(var);
  return out;
}

ConsistencyMasks lr_consistency(const DisparityMap& left, const DisparityMap& right, double threshold) {
  if (left.width() != right.width() || left.height() != right.height()) {
    throw ShapeError("lr_consistency: left and right maps differ in size");
  }
  if (!(threshold >= 0.0)) throw ArgumentError("lr_consistency: threshold must be non-negative");
  const int W = left.width(), H = left.height();
  ConsistencyMasks out{Mask(W, H, 0), Mask(W, H, 0)};
  auto check = [&](const DisparityMap& a, const DisparityMap& b, int sign, Mask& mask) {
    for (int y = 0; y < H; ++y) {
      for (int x = 0; x < W; ++x) {
        if (!a.is_valid(x, y)) continue;
        const double d = a.values(x, y);
        const long xo = x + sign * std::lround(d);
        if (xo < 0 || xo >= W) continue;
        const int xi = static_cast<int>(xo);
        if (!b.is_valid(xi, y)) continue;
        if (std::abs(d - b.values(xi, y)) <= threshold) mask(x, y) = 1;
      }
    }
  };
  check(left, right, -1, out.left);
  check(right, left, +1, out.right);
  return out;
}

}  // namespace stereogt
