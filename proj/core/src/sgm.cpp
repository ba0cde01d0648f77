#include "stereogt/sgm.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <vector>

namespace stereogt {

SgmParams SgmParams::for_bits(int bits) {
  SgmParams p;
  p.p1 = 8.0f * static_cast<float>(bits) / 64.0f;
  p.p2 = 32.0f * static_cast<float>(bits) / 64.0f;
  return p;
}

void SgmParams::validate() const {
  if (!(p1 >= 0.0f) || !(p2 >= p1)) throw ArgumentError("sgm penalties must satisfy 0 <= P1 <= P2");
  if (paths != 4 && paths != 8) throw ArgumentError("sgm path count must be 4 or 8");
}

namespace {

struct Dir {
  int dx, dy;
};

constexpr std::array<Dir, 8> kDirs{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, 1}, {1, -1}, {-1, -1}}};

void aggregate_path(const CostVolume& costs, Dir r, float p1, float p2, CostVolume& out) {
  const int W = costs.width(), H = costs.height(), D = costs.disparities();
  const auto Wz = static_cast<std::size_t>(W), Dz = static_cast<std::size_t>(D);
  std::vector<float> prev(Wz * Dz), cur(Wz * Dz);
  std::vector<float> prev_min(Wz), cur_min(Wz);

  for (int yi = 0; yi < H; ++yi) {
    const int y = r.dy >= 0 ? yi : H - 1 - yi;
    for (int xi = 0; xi < W; ++xi) {
      const int x = r.dx >= 0 ? xi : W - 1 - xi;
      const auto c = costs.costs(x, y);
      auto acc = out.costs(x, y);
      float* L = cur.data() + static_cast<std::size_t>(x) * Dz;
      const int px = x - r.dx, py = y - r.dy;
      float best = std::numeric_limits<float>::infinity();
      if (px < 0 || px >= W || py < 0 || py >= H) {
        for (int d = 0; d < D; ++d) {
          L[d] = c[static_cast<std::size_t>(d)];
          best = std::min(best, L[d]);
        }
      } else {
        const bool same_row = r.dy == 0;
        const float* Lp = (same_row ? cur.data() : prev.data()) + static_cast<std::size_t>(px) * Dz;
        const float mp = same_row ? cur_min[static_cast<std::size_t>(px)] : prev_min[static_cast<std::size_t>(px)];
        const float jump = mp + p2;
        for (int d = 0; d < D; ++d) {
          float m = std::min(Lp[d], jump);
          if (d > 0) m = std::min(m, Lp[d - 1] + p1);
          if (d + 1 < D) m = std::min(m, Lp[d + 1] + p1);
          L[d] = c[static_cast<std::size_t>(d)] + m - mp;
          best = std::min(best, L[d]);
        }
      }
      cur_min[static_cast<std::size_t>(x)] = best;
      for (int d = 0; d < D; ++d) acc[static_cast<std::size_t>(d)] += L[d];
    }
    std::swap(prev, cur);
    std::swap(prev_min, cur_min);
  }
}

}  // namespace

CostVolume sgm_aggregate(const CostVolume& costs, const SgmParams& params) {
  params.validate();
  CostVolume out(costs.width(), costs.height(), costs.d_max(), 0.0f);
  out.set_frame_count(costs.frame_count());
  for (int i = 0; i < params.paths; ++i) aggregate_path(costs, kDirs[static_cast<std::size_t>(i)], params.p1, params.p2, out);
  return out;
}

}  // namespace stereogt
