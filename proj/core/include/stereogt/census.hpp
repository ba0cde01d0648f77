#pragma once

#include <cstdint>

#include "stereogt/image.hpp"

namespace stereogt {

/// Odd-sized census window; at most 65 pixels so descriptors fit 64 bits.
struct CensusWindow {
  int width = 9;
  int height = 7;

  [[nodiscard]] int bits() const noexcept { return width * height - 1; }
  /// Throws ArgumentError for even or oversized windows.
  void validate() const;
};

using CensusImage = Image<std::uint64_t>;

/// Bit k of a descriptor is set iff the k-th neighbour (row-major over the
/// window, center skipped) is strictly darker than the center. Neighbours
/// outside the image are clamped to the border.
CensusImage census_transform(const ImageF& img, CensusWindow window = {});

}  // namespace stereogt
