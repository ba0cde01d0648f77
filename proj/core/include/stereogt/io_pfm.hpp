#pragma once

#include <string>
#include <string_view>

#include "stereogt/image.hpp"

namespace stereogt {

/// Single-channel PFM ("Pf"), little-endian, rows bottom to top.
std::string encode_pfm(const ImageF& img);
/// Accepts either byte order. Throws FormatError prefixed with `source`.
ImageF decode_pfm(std::string_view bytes, const std::string& source = "<pfm>");

void write_pfm(const std::string& path, const ImageF& img);
ImageF read_pfm(const std::string& path);

/// Invalid pixels are stored as +inf; on reading, anything non-finite or
/// non-positive becomes invalid.
ImageF to_pfm_image(const Image<double>& values, const Mask& valid);
void write_disparity_pfm(const std::string& path, const DisparityMap& disp);
DisparityMap read_disparity_pfm(const std::string& path);
void write_depth_pfm(const std::string& path, const DepthMap& depth);
DepthMap read_depth_pfm(const std::string& path);

}  // namespace stereogt
