#include "stereogt/io_pfm.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <limits>

#include "stereogt/file_io.hpp"

namespace stereogt {

namespace {

std::uint32_t byteswap32(std::uint32_t v) {
  return (v >> 24) | ((v >> 8) & 0xff00u) | ((v << 8) & 0xff0000u) | (v << 24);
}

// Reads one whitespace-delimited token; a header line ends with a single
// whitespace byte before the pixel data.
std::string_view next_token(std::string_view bytes, std::size_t& pos, const std::string& source) {
  while (pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
  const std::size_t start = pos;
  while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
  if (start == pos) throw FormatError(source + ": truncated PFM header");
  return bytes.substr(start, pos - start);
}

template <class T>
T parse_number(std::string_view tok, const std::string& source, const char* what) {
  T v{};
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
    throw FormatError(source + ": bad PFM " + what + " '" + std::string(tok) + "'");
  }
  return v;
}

template <class Tag>
ScalarMap<Tag> from_pfm_image(const ImageF& img) {
  ScalarMap<Tag> out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const float v = img(x, y);
      if (std::isfinite(v) && v > 0.0f) out.set(x, y, v);
    }
  }
  return out;
}

}  // namespace

std::string encode_pfm(const ImageF& img) {
  std::string out = "Pf\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n-1\n";
  const std::size_t header = out.size();
  out.resize(header + img.size() * 4);
  char* dst = out.data() + header;
  for (int y = img.height() - 1; y >= 0; --y) {
    for (float v : img.row(y)) {
      auto bits = std::bit_cast<std::uint32_t>(v);
      if constexpr (std::endian::native == std::endian::big) bits = byteswap32(bits);
      std::memcpy(dst, &bits, 4);
      dst += 4;
    }
  }
  return out;
}

ImageF decode_pfm(std::string_view bytes, const std::string& source) {
  std::size_t pos = 0;
  const auto magic = next_token(bytes, pos, source);
  if (magic == "PF") throw FormatError(source + ": colour PFM is not supported");
  if (magic != "Pf") throw FormatError(source + ": not a PFM file");
  const int w = parse_number<int>(next_token(bytes, pos, source), source, "width");
  const int h = parse_number<int>(next_token(bytes, pos, source), source, "height");
  const double scale = parse_number<double>(next_token(bytes, pos, source), source, "scale");
  if (w <= 0 || h <= 0) throw FormatError(source + ": PFM dimensions must be positive");
  if (scale == 0.0 || !std::isfinite(scale)) throw FormatError(source + ": PFM scale must be non-zero");
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    throw FormatError(source + ": truncated PFM header");
  }
  ++pos;
  const std::size_t need = static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 4;
  if (bytes.size() - pos != need) {
    throw FormatError(source + ": PFM payload has " + std::to_string(bytes.size() - pos) + " bytes, expected " +
                      std::to_string(need));
  }
  const bool little = scale < 0.0;
  const bool swap = little != (std::endian::native == std::endian::little);
  ImageF img(w, h);
  const char* src = bytes.data() + pos;
  for (int y = h - 1; y >= 0; --y) {
    for (float& v : img.row(y)) {
      std::uint32_t bits = 0;
      std::memcpy(&bits, src, 4);
      if (swap) bits = byteswap32(bits);
      v = std::bit_cast<float>(bits);
      src += 4;
    }
  }
  return img;
}

void write_pfm(const std::string& path, const ImageF& img) { write_file(path, encode_pfm(img)); }

ImageF read_pfm(const std::string& path) { return decode_pfm(read_file(path), path); }

ImageF to_pfm_image(const Image<double>& values, const Mask& valid) {
  require_same_shape(values, valid, "to_pfm_image");
  ImageF img(values.width(), values.height(), std::numeric_limits<float>::infinity());
  for (int y = 0; y < values.height(); ++y) {
    for (int x = 0; x < values.width(); ++x) {
      if (valid(x, y)) img(x, y) = static_cast<float>(values(x, y));
    }
  }
  return img;
}

void write_disparity_pfm(const std::string& path, const DisparityMap& disp) {
  write_pfm(path, to_pfm_image(disp.values, disp.valid));
}

DisparityMap read_disparity_pfm(const std::string& path) { return from_pfm_image<DisparityTag>(read_pfm(path)); }

void write_depth_pfm(const std::string& path, const DepthMap& depth) {
  write_pfm(path, to_pfm_image(depth.values, depth.valid));
}

DepthMap read_depth_pfm(const std::string& path) { return from_pfm_image<DepthTag>(read_pfm(path)); }

}  // namespace stereogt
