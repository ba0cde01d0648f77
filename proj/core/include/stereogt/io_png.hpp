#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "stereogt/image.hpp"

namespace stereogt {

/// Grayscale PNG, 8 or 16 bits per sample. Decoding rejects other formats
/// with FormatError prefixed by `source`.
std::string encode_png(const Image<std::uint8_t>& img);
std::string encode_png(const Image<std::uint16_t>& img);
Image<std::uint8_t> decode_png8(std::string_view bytes, const std::string& source = "<png>");
Image<std::uint16_t> decode_png16(std::string_view bytes, const std::string& source = "<png>");

void write_png(const std::string& path, const Image<std::uint8_t>& img);
void write_png(const std::string& path, const Image<std::uint16_t>& img);
Image<std::uint8_t> read_png8(const std::string& path);
Image<std::uint16_t> read_png16(const std::string& path);

/// Float image clamped and rounded to 0..255.
Image<std::uint8_t> to_gray8(const ImageF& img);
ImageF to_float(const Image<std::uint8_t>& img);

/// 16-bit disparity PNG: value = round(disparity * 256), 0 = invalid.
void write_disparity_png16(const std::string& path, const DisparityMap& disp);
DisparityMap read_disparity_png16(const std::string& path);

}  // namespace stereogt
