#include "stereogt/rle_mask.hpp"

#include <charconv>
#include <vector>

#include "stereogt/kv_text.hpp"

namespace stereogt {

std::string encode_rle(const Mask& removal) {
  std::string runs;
  std::uint8_t state = 0;
  long long count = 0;
  auto flush = [&] {
    if (!runs.empty()) runs += ' ';
    runs += std::to_string(count);
  };
  for (const auto v : removal.pixels()) {
    const std::uint8_t s = v != 0 ? 1 : 0;
    if (s != state) {
      flush();
      state = s;
      count = 0;
    }
    ++count;
  }
  flush();
  return "width=" + std::to_string(removal.width()) + "\nheight=" + std::to_string(removal.height()) +
         "\nruns=" + runs + "\n";
}

Mask decode_rle(std::string_view text, const std::string& source) {
  const auto doc = KeyValueDoc::parse(text, source);
  for (const auto& [key, value] : doc.entries()) {
    if (key != "width" && key != "height" && key != "runs") throw FormatError(source + ": unknown key '" + key + "'");
  }
  const long long w = doc.get_int("width");
  const long long h = doc.get_int("height");
  if (w < 1 || h < 1 || w * h > (1LL << 31)) throw FormatError(source + ": bad mask dimensions");
  Mask mask(static_cast<int>(w), static_cast<int>(h), 0);

  const std::string& runs = doc.get("runs");
  const char* p = runs.data();
  const char* end = runs.data() + runs.size();
  long long pos = 0;
  bool remove = false;
  while (p < end) {
    while (p < end && *p == ' ') ++p;
    if (p == end) break;
    long long n = 0;
    const auto res = std::from_chars(p, end, n);
    if (res.ec != std::errc{} || n < 0 || (res.ptr != end && *res.ptr != ' ')) {
      throw FormatError(source + ": malformed run list");
    }
    p = res.ptr;
    if (n > w * h - pos) throw FormatError(source + ": runs exceed " + std::to_string(w * h) + " pixels");
    if (remove) std::fill_n(mask.data() + pos, n, std::uint8_t{1});
    pos += n;
    remove = !remove;
  }
  if (pos != w * h) {
    throw FormatError(source + ": runs cover " + std::to_string(pos) + " of " + std::to_string(w * h) + " pixels");
  }
  return mask;
}

}  // namespace stereogt
