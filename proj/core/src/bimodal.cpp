#include "stereogt/bimodal.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "stereogt/errors.hpp"

namespace stereogt {

void BimodalLaplacian::validate() const {
  if (!(pi >= 0.0 && pi <= 1.0)) throw ArgumentError("mixture weight must lie in [0, 1]");
  if (!(b1 > 0.0) || !(b2 > 0.0)) throw ArgumentError("Laplacian scales must be positive");
}

double bimodal_density(const BimodalLaplacian& m, double d) {
  m.validate();
  return m.pi / (2.0 * m.b1) * std::exp(-std::abs(d - m.mu1) / m.b1) +
         (1.0 - m.pi) / (2.0 * m.b2) * std::exp(-std::abs(d - m.mu2) / m.b2);
}

double select_mode(const BimodalLaplacian& m) {
  return bimodal_density(m, m.mu2) > bimodal_density(m, m.mu1) ? m.mu2 : m.mu1;
}

namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean_abs_dev(const std::vector<double>& v, double center) {
  double s = 0.0;
  for (double x : v) s += std::abs(x - center);
  return std::max(kMinLaplacianScale, s / static_cast<double>(v.size()));
}

}  // namespace

BimodalLaplacian fit_bimodal(std::span<const double> samples) {
  if (samples.empty()) throw ArgumentError("fit_bimodal: no samples");
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  const double lo = *lo_it, hi = *hi_it;
  if (lo == hi) return {1.0, lo, kMinLaplacianScale, lo, kMinLaplacianScale};

  double c1 = lo, c2 = hi;
  std::vector<int> assign(samples.size(), -1);
  for (int iter = 0; iter < 100; ++iter) {
    bool changed = false;
    double s1 = 0.0, s2 = 0.0;
    int n1 = 0, n2 = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const int a = std::abs(samples[i] - c2) < std::abs(samples[i] - c1) ? 1 : 0;
      changed = changed || a != assign[i];
      assign[i] = a;
      if (a == 0) {
        s1 += samples[i];
        ++n1;
      } else {
        s2 += samples[i];
        ++n2;
      }
    }
    if (n1 > 0) c1 = s1 / n1;
    if (n2 > 0) c2 = s2 / n2;
    if (!changed) break;
  }

  std::vector<double> g1, g2;
  for (std::size_t i = 0; i < samples.size(); ++i) (assign[i] == 0 ? g1 : g2).push_back(samples[i]);
  if (g2.empty()) std::swap(g1, g2);
  if (g1.empty()) {
    const double mu = median_of(g2);
    const double b = mean_abs_dev(g2, mu);
    return {1.0, mu, b, mu, b};
  }
  BimodalLaplacian m;
  m.mu1 = median_of(g1);
  m.b1 = mean_abs_dev(g1, m.mu1);
  m.mu2 = median_of(g2);
  m.b2 = mean_abs_dev(g2, m.mu2);
  m.pi = static_cast<double>(g1.size()) / static_cast<double>(samples.size());
  return m;
}

double bimodal_fit_and_select(std::span<const double> samples) {
  return select_mode(fit_bimodal(samples));
}

}  // namespace stereogt
