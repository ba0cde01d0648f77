#include "stereogt/point_cloud.hpp"

#include <bit>
#include <cstring>
#include <sstream>

#include "stereogt/kv_text.hpp"

namespace stereogt {

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
}

void put_f32(std::string& out, double v) { put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v))); }

std::uint32_t get_u32(const char* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(p[i])) << (8 * i);
  return v;
}

float get_f32(const char* p) { return std::bit_cast<float>(get_u32(p)); }

}  // namespace

RgbImage gray_to_rgb(const Image<std::uint8_t>& gray) {
  RgbImage out(gray.width(), gray.height());
  for (std::size_t i = 0; i < gray.size(); ++i) {
    const auto g = gray.data()[i];
    out.data()[i] = {g, g, g};
  }
  return out;
}

PointCloud export_point_cloud(const DisparityMap& disp, const RgbImage& rgb, const PinholeCamera& cam,
                              double baseline_m) {
  cam.validate();
  require_same_shape(disp.values, rgb, "export_point_cloud");
  const DepthMap depth = disparity_to_depth(disp, cam.fx, baseline_m);
  PointCloud cloud;
  cloud.points.reserve(depth.valid_count());
  for (int v = 0; v < disp.height(); ++v) {
    for (int u = 0; u < disp.width(); ++u) {
      if (!depth.is_valid(u, v)) continue;
      const double Z = depth.values(u, v);
      CloudPoint p;
      p.x = (u - cam.cx) * Z / cam.fx;
      p.y = (v - cam.cy) * Z / cam.fy;
      p.z = Z;
      const auto& c = rgb(u, v);
      p.r = c[0];
      p.g = c[1];
      p.b = c[2];
      p.variance = disp.variance ? (*disp.variance)(u, v) : 0.0;
      p.u = static_cast<std::uint32_t>(u);
      p.v = static_cast<std::uint32_t>(v);
      cloud.points.push_back(p);
    }
  }
  return cloud;
}

std::string encode_cloud_records(const PointCloud& cloud) {
  std::string out;
  out.reserve(cloud.points.size() * kCloudRecordSize);
  for (const auto& p : cloud.points) {
    put_f32(out, p.x);
    put_f32(out, p.y);
    put_f32(out, p.z);
    out.push_back(static_cast<char>(p.r));
    out.push_back(static_cast<char>(p.g));
    out.push_back(static_cast<char>(p.b));
    put_f32(out, p.variance);
    put_u32(out, p.u);
    put_u32(out, p.v);
  }
  return out;
}

PointCloud decode_cloud_records(std::string_view bytes, const std::string& source) {
  if (bytes.size() % kCloudRecordSize != 0) {
    throw FormatError(source + ": " + std::to_string(bytes.size()) + " bytes is not a whole number of records");
  }
  PointCloud cloud;
  cloud.points.resize(bytes.size() / kCloudRecordSize);
  const char* p = bytes.data();
  for (auto& pt : cloud.points) {
    pt.x = get_f32(p);
    pt.y = get_f32(p + 4);
    pt.z = get_f32(p + 8);
    pt.r = static_cast<std::uint8_t>(p[12]);
    pt.g = static_cast<std::uint8_t>(p[13]);
    pt.b = static_cast<std::uint8_t>(p[14]);
    pt.variance = get_f32(p + 15);
    pt.u = get_u32(p + 19);
    pt.v = get_u32(p + 23);
    p += kCloudRecordSize;
  }
  return cloud;
}

std::string encode_ply(const PointCloud& cloud) {
  std::string out =
      "ply\nformat ascii 1.0\ncomment variance in pixels^2, u v source pixel\nelement vertex " +
      std::to_string(cloud.points.size()) +
      "\nproperty double x\nproperty double y\nproperty double z\n"
      "property uchar red\nproperty uchar green\nproperty uchar blue\n"
      "property double variance\nproperty uint u\nproperty uint v\nend_header\n";
  for (const auto& p : cloud.points) {
    out += format_double(p.x) + ' ' + format_double(p.y) + ' ' + format_double(p.z) + ' ' + std::to_string(p.r) +
           ' ' + std::to_string(p.g) + ' ' + std::to_string(p.b) + ' ' + format_double(p.variance) + ' ' +
           std::to_string(p.u) + ' ' + std::to_string(p.v) + '\n';
  }
  return out;
}

PointCloud decode_ply(std::string_view text, const std::string& source) {
  std::istringstream in{std::string(text)};
  std::string line;
  auto fail = [&](const std::string& msg) -> void { throw FormatError(source + ": " + msg); };
  if (!std::getline(in, line) || line != "ply") fail("missing ply magic");
  std::size_t count = 0;
  bool have_count = false;
  while (std::getline(in, line)) {
    if (line == "end_header") break;
    if (line.rfind("format ", 0) == 0 && line != "format ascii 1.0") fail("only ASCII PLY is supported");
    if (line.rfind("element vertex ", 0) == 0) {
      count = std::stoul(line.substr(15));
      have_count = true;
    }
  }
  if (!have_count || line != "end_header") fail("incomplete header");
  PointCloud cloud;
  cloud.points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::getline(in, line)) fail("expected " + std::to_string(count) + " vertices");
    std::istringstream ls(line);
    CloudPoint p;
    unsigned r = 0, g = 0, b = 0;
    if (!(ls >> p.x >> p.y >> p.z >> r >> g >> b >> p.variance >> p.u >> p.v) || r > 255 || g > 255 || b > 255) {
      fail("malformed vertex line " + std::to_string(i));
    }
    p.r = static_cast<std::uint8_t>(r);
    p.g = static_cast<std::uint8_t>(g);
    p.b = static_cast<std::uint8_t>(b);
    cloud.points.push_back(p);
  }
  return cloud;
}

Mask removal_mask_from_points(const std::vector<CloudPoint>& points, int width, int height) {
  Mask mask(width, height, 0);
  for (const auto& p : points) {
    if (p.u >= static_cast<std::uint32_t>(width) || p.v >= static_cast<std::uint32_t>(height)) {
      throw RangeError("point pixel (" + std::to_string(p.u) + ", " + std::to_string(p.v) + ") outside mask");
    }
    mask(static_cast<int>(p.u), static_cast<int>(p.v)) = 1;
  }
  return mask;
}

}  // namespace stereogt
