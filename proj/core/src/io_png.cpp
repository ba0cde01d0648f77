#include "stereogt/io_png.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <vector>

#include "stereogt/file_io.hpp"

namespace stereogt {

namespace {

struct ReadCursor {
  std::string_view bytes;
  std::size_t pos = 0;
};

void on_error(png_structp png, png_const_charp msg) {
  auto* text = static_cast<std::string*>(png_get_error_ptr(png));
  if (text) *text = msg;
  png_longjmp(png, 1);
}

void on_warning(png_structp, png_const_charp) {}

void on_write(png_structp png, png_bytep data, png_size_t n) {
  auto* out = static_cast<std::string*>(png_get_io_ptr(png));
  out->append(reinterpret_cast<const char*>(data), n);
}

void on_flush(png_structp) {}

void on_read(png_structp png, png_bytep data, png_size_t n) {
  auto* cur = static_cast<ReadCursor*>(png_get_io_ptr(png));
  if (cur->bytes.size() - cur->pos < n) png_error(png, "unexpected end of data");
  std::memcpy(data, cur->bytes.data() + cur->pos, n);
  cur->pos += n;
}

template <class T>
std::string encode_gray(const Image<T>& img) {
  constexpr int depth = sizeof(T) * 8;
  if (img.width() < 1 || img.height() < 1) throw ArgumentError("cannot encode an empty PNG");
  std::string out, err;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &err, on_error, on_warning);
  if (!png) throw IoError("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  std::vector<png_byte> row(static_cast<std::size_t>(img.width()) * sizeof(T));
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("PNG encoding failed: " + err);
  }
  png_set_write_fn(png, &out, on_write, on_flush);
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.width()), static_cast<png_uint_32>(img.height()), depth,
               PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < img.height(); ++y) {
    const auto src = img.row(y);
    for (std::size_t x = 0; x < src.size(); ++x) {
      if constexpr (sizeof(T) == 1) {
        row[x] = src[x];
      } else {
        row[2 * x] = static_cast<png_byte>(src[x] >> 8);
        row[2 * x + 1] = static_cast<png_byte>(src[x] & 0xff);
      }
    }
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

template <class T>
Image<T> decode_gray(std::string_view bytes, const std::string& source) {
  constexpr int want_depth = sizeof(T) * 8;
  if (bytes.size() < 8 || png_sig_cmp(reinterpret_cast<png_const_bytep>(bytes.data()), 0, 8) != 0) {
    throw FormatError(source + ": not a PNG file");
  }
  std::string err;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &err, on_error, on_warning);
  if (!png) throw IoError("png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  ReadCursor cur{bytes, 0};
  Image<T> img;
  std::vector<png_byte> row;
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw FormatError(source + ": corrupt PNG (" + err + ")");
  }
  png_set_read_fn(png, &cur, on_read);
  png_read_info(png, info);
  const auto w = png_get_image_width(png, info);
  const auto h = png_get_image_height(png, info);
  const int depth = png_get_bit_depth(png, info);
  const int color = png_get_color_type(png, info);
  if (color != PNG_COLOR_TYPE_GRAY || depth != want_depth ||
      png_get_interlace_type(png, info) != PNG_INTERLACE_NONE) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw FormatError(source + ": expected a non-interlaced " + std::to_string(want_depth) + "-bit grayscale PNG");
  }
  img = Image<T>(static_cast<int>(w), static_cast<int>(h));
  row.resize(static_cast<std::size_t>(w) * sizeof(T));
  for (png_uint_32 y = 0; y < h; ++y) {
    png_read_row(png, row.data(), nullptr);
    auto dst = img.row(static_cast<int>(y));
    for (std::size_t x = 0; x < dst.size(); ++x) {
      if constexpr (sizeof(T) == 1) {
        dst[x] = row[x];
      } else {
        dst[x] = static_cast<T>((row[2 * x] << 8) | row[2 * x + 1]);
      }
    }
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return img;
}

}  // namespace

std::string encode_png(const Image<std::uint8_t>& img) { return encode_gray(img); }
std::string encode_png(const Image<std::uint16_t>& img) { return encode_gray(img); }

Image<std::uint8_t> decode_png8(std::string_view bytes, const std::string& source) {
  return decode_gray<std::uint8_t>(bytes, source);
}
Image<std::uint16_t> decode_png16(std::string_view bytes, const std::string& source) {
  return decode_gray<std::uint16_t>(bytes, source);
}

void write_png(const std::string& path, const Image<std::uint8_t>& img) { write_file(path, encode_png(img)); }
void write_png(const std::string& path, const Image<std::uint16_t>& img) { write_file(path, encode_png(img)); }
Image<std::uint8_t> read_png8(const std::string& path) { return decode_png8(read_file(path), path); }
Image<std::uint16_t> read_png16(const std::string& path) { return decode_png16(read_file(path), path); }

Image<std::uint8_t> to_gray8(const ImageF& img) {
  Image<std::uint8_t> out(img.width(), img.height());
  for (std::size_t i = 0; i < img.size(); ++i) {
    const float v = std::isfinite(img.data()[i]) ? img.data()[i] : 0.0f;
    out.data()[i] = static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0f, 255.0f)));
  }
  return out;
}

ImageF to_float(const Image<std::uint8_t>& img) {
  ImageF out(img.width(), img.height());
  for (std::size_t i = 0; i < img.size(); ++i) out.data()[i] = img.data()[i];
  return out;
}

void write_disparity_png16(const std::string& path, const DisparityMap& disp) {
  Image<std::uint16_t> img(disp.width(), disp.height(), 0);
  for (int y = 0; y < disp.height(); ++y) {
    for (int x = 0; x < disp.width(); ++x) {
      if (!disp.is_valid(x, y)) continue;
      const double v = std::round(disp.values(x, y) * 256.0);
      img(x, y) = static_cast<std::uint16_t>(std::clamp(v, 1.0, 65535.0));
    }
  }
  write_png(path, img);
}

DisparityMap read_disparity_png16(const std::string& path) {
  const auto img = read_png16(path);
  DisparityMap out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (img(x, y) != 0) out.set(x, y, img(x, y) / 256.0);
    }
  }
  return out;
}

}  // namespace stereogt
