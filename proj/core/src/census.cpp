#include "stereogt/census.hpp"

#include <algorithm>
#include <vector>

namespace stereogt {

void CensusWindow::validate() const {
  if (width < 1 || height < 1 || width % 2 == 0 || height % 2 == 0) {
    throw ArgumentError("census window dimensions must be odd and positive");
  }
  if (bits() > 64) throw ArgumentError("census window has more than 64 neighbours");
}

CensusImage census_transform(const ImageF& img, CensusWindow window) {
  window.validate();
  const int W = img.width(), H = img.height();
  CensusImage out(W, H, 0);
  const int rx = window.width / 2, ry = window.height / 2;

  struct Offset {
    int dx, dy;
  };
  std::vector<Offset> offsets;
  for (int dy = -ry; dy <= ry; ++dy) {
    for (int dx = -rx; dx <= rx; ++dx) {
      if (dx != 0 || dy != 0) offsets.push_back({dx, dy});
    }
  }

  for (int y = 0; y < H; ++y) {
    for (int x = 0; x < W; ++x) {
      const float c = img(x, y);
      std::uint64_t desc = 0;
      const bool interior = x >= rx && x < W - rx && y >= ry && y < H - ry;
      for (std::size_t k = 0; k < offsets.size(); ++k) {
        int nx = x + offsets[k].dx, ny = y + offsets[k].dy;
        if (!interior) {
          nx = std::clamp(nx, 0, W - 1);
          ny = std::clamp(ny, 0, H - 1);
        }
        if (img(nx, ny) < c) desc |= std::uint64_t{1} << k;
      }
      out(x, y) = desc;
    }
  }
  return out;
}

}  // namespace stereogt
