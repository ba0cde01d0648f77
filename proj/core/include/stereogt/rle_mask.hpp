#pragma once

#include <string>
#include <string_view>

#include "stereogt/image.hpp"

namespace stereogt {

/// Text form of a removal mask:
///   width=<W>
///   height=<H>
///   runs=<keep> <remove> <keep> ...
/// Runs are row-major and must sum to W*H; the first run counts kept pixels
/// and may be 0. In the decoded mask 1 marks a removed pixel.
std::string encode_rle(const Mask& removal);
Mask decode_rle(std::string_view text, const std::string& source = "<rle>");

}  // namespace stereogt
