#pragma once

#include <span>

namespace stereogt {

/// Two-component Laplacian mixture over disparity.
struct BimodalLaplacian {
  double pi = 1.0;
  double mu1 = 0.0;
  double b1 = 1.0;
  double mu2 = 0.0;
  double b2 = 1.0;

  /// Throws ArgumentError unless pi is in [0, 1] and both scales are positive.
  void validate() const;
};

/// pi/(2 b1) exp(-|d - mu1|/b1) + (1 - pi)/(2 b2) exp(-|d - mu2|/b2).
double bimodal_density(const BimodalLaplacian& m, double d);

/// The component center with the larger mixture density; mu1 on ties.
double select_mode(const BimodalLaplacian& m);

inline constexpr double kMinLaplacianScale = 0.05;

/// Splits samples with a 1-D 2-means (seeded at min and max), then takes the
/// per-cluster median as center and mean absolute deviation (at least 0.05)
/// as scale. Identical samples give pi = 1 with both centers at that value.
/// Throws ArgumentError on an empty sample set.
BimodalLaplacian fit_bimodal(std::span<const double> samples);

double bimodal_fit_and_select(std::span<const double> samples);

}  // namespace stereogt
