#include "stereogt/warp.hpp"

namespace stereogt {

WarpField WarpField::identity(int width, int height) { return translation(width, height, 0.0, 0.0); }

WarpField WarpField::translation(int width, int height, double dx, double dy) {
  WarpField w(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      w.src_x(x, y) = x - dx;
      w.src_y(x, y) = y - dy;
    }
  }
  return w;
}

WarpField WarpField::from_homography(const Eigen::Matrix3d& out_to_src, int width, int height) {
  WarpField w(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const Eigen::Vector3d p = out_to_src * Eigen::Vector3d(x, y, 1.0);
      if (std::abs(p.z()) < 1e-15) continue;
      w.src_x(x, y) = p.x() / p.z();
      w.src_y(x, y) = p.y() / p.z();
    }
  }
  return w;
}

}  // namespace stereogt
