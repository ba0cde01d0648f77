#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "stereogt/camera.hpp"
#include "stereogt/image.hpp"

namespace stereogt {

using RgbImage = Image<std::array<std::uint8_t, 3>>;

RgbImage gray_to_rgb(const Image<std::uint8_t>& gray);

struct CloudPoint {
  double x = 0.0, y = 0.0, z = 0.0;  ///< meters, camera frame
  std::uint8_t r = 0, g = 0, b = 0;
  double variance = 0.0;             ///< pixels^2
  std::uint32_t u = 0, v = 0;        ///< source pixel
};

struct PointCloud {
  std::vector<CloudPoint> points;
};

/// One point per valid disparity pixel, row-major, back-projected through
/// `cam` with Z = f*b/d. Variance is taken from the map (0 when absent).
PointCloud export_point_cloud(const DisparityMap& disp, const RgbImage& rgb, const PinholeCamera& cam,
                              double baseline_m);

/// Little-endian 27-byte records: f32 x, y, z; u8 r, g, b; f32 variance;
/// u32 u; u32 v.
inline constexpr std::size_t kCloudRecordSize = 27;
std::string encode_cloud_records(const PointCloud& cloud);
/// Throws FormatError when the length is not a multiple of the record size.
PointCloud decode_cloud_records(std::string_view bytes, const std::string& source = "<cloud>");

/// ASCII PLY with x y z red green blue variance u v per vertex.
std::string encode_ply(const PointCloud& cloud);
PointCloud decode_ply(std::string_view text, const std::string& source = "<ply>");

/// Removal mask (1 = remove) with the source pixels of `points` set.
/// Throws RangeError when a point's pixel lies outside width x height.
Mask removal_mask_from_points(const std::vector<CloudPoint>& points, int width, int height);

}  // namespace stereogt
