#include "stereogt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace stereogt {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool in_mask(const Mask* mask, int x, int y) { return mask == nullptr || (*mask)(x, y) != 0; }

template <class A, class B>
void check_inputs(const ScalarMap<A>& a, const ScalarMap<B>& b, const Mask* mask, const char* what) {
  require_same_shape(a.values, b.values, what);
  if (mask) require_same_shape(a.values, *mask, what);
}

}  // namespace

StereoMetrics stereo_metrics(const DisparityMap& pred, const DisparityMap& gt, const Mask* mask) {
  check_inputs(pred, gt, mask, "stereo_metrics");
  StereoMetrics m;
  std::size_t over[4] = {0, 0, 0, 0};
  double abs_sum = 0.0, sq_sum = 0.0;
  for (int y = 0; y < gt.height(); ++y) {
    for (int x = 0; x < gt.width(); ++x) {
      if (!gt.is_valid(x, y) || !in_mask(mask, x, y)) continue;
      ++m.count;
      if (!pred.is_valid(x, y)) {
        ++m.missing;
        continue;
      }
      const double e = std::abs(pred.values(x, y) - gt.values(x, y));
      over[0] += e > 2.0;
      over[1] += e > 4.0;
      over[2] += e > 6.0;
      over[3] += e > 8.0;
      abs_sum += e;
      sq_sum += e * e;
    }
  }
  if (m.count == 0) throw EmptyStratumError("stereo_metrics: no evaluable pixels");
  const double n = static_cast<double>(m.count);
  m.bad2 = 100.0 * static_cast<double>(over[0] + m.missing) / n;
  m.bad4 = 100.0 * static_cast<double>(over[1] + m.missing) / n;
  m.bad6 = 100.0 * static_cast<double>(over[2] + m.missing) / n;
  m.bad8 = 100.0 * static_cast<double>(over[3] + m.missing) / n;
  const std::size_t predicted = m.count - m.missing;
  m.mae = predicted ? abs_sum / static_cast<double>(predicted) : kNaN;
  m.rmse = predicted ? std::sqrt(sq_sum / static_cast<double>(predicted)) : kNaN;
  return m;
}

MonoMetrics mono_metrics(const DepthMap& pred, const DepthMap& gt, const Mask* mask) {
  check_inputs(pred, gt, mask, "mono_metrics");
  MonoMetrics m;
  std::size_t under[3] = {0, 0, 0};
  double abs_sum = 0.0, rel_sum = 0.0, sq_sum = 0.0;
  for (int y = 0; y < gt.height(); ++y) {
    for (int x = 0; x < gt.width(); ++x) {
      if (!gt.is_valid(x, y) || !in_mask(mask, x, y)) continue;
      const double p = pred.values(x, y), g = gt.values(x, y);
      if (!pred.is_valid(x, y) || !(p > 0.0)) {
        ++m.excluded;
        continue;
      }
      ++m.count;
      const double ratio = std::max(p / g, g / p);
      under[0] += ratio < 1.05;
      under[1] += ratio < 1.15;
      under[2] += ratio < 1.25;
      const double e = std::abs(p - g);
      abs_sum += e;
      rel_sum += e / g;
      sq_sum += e * e;
    }
  }
  if (m.count == 0) throw EmptyStratumError("mono_metrics: no evaluable pixels");
  const double n = static_cast<double>(m.count);
  m.delta105 = 100.0 * static_cast<double>(under[0]) / n;
  m.delta115 = 100.0 * static_cast<double>(under[1]) / n;
  m.delta125 = 100.0 * static_cast<double>(under[2]) / n;
  m.mae = abs_sum / n;
  m.abs_rel = rel_sum / n;
  m.rmse = std::sqrt(sq_sum / n);
  return m;
}

Alignment scale_shift_align(const DepthMap& pred, const DepthMap& gt, const Mask* mask, AlignSpace space) {
  check_inputs(pred, gt, mask, "scale_shift_align");
  const bool inv = space == AlignSpace::inverse_depth;
  auto usable = [&](int x, int y) {
    return gt.is_valid(x, y) && pred.is_valid(x, y) && in_mask(mask, x, y);
  };
  auto tr = [&](double v) { return inv ? 1.0 / v : v; };

  Alignment a;
  double sp = 0.0, sg = 0.0;
  for (int y = 0; y < gt.height(); ++y) {
    for (int x = 0; x < gt.width(); ++x) {
      if (!usable(x, y)) continue;
      ++a.count;
      sp += tr(pred.values(x, y));
      sg += tr(gt.values(x, y));
    }
  }
  if (a.count == 0) throw EmptyStratumError("scale_shift_align: no usable pixels");
  const double n = static_cast<double>(a.count);
  const double mp = sp / n, mg = sg / n;
  double sxx = 0.0, sxy = 0.0;
  for (int y = 0; y < gt.height(); ++y) {
    for (int x = 0; x < gt.width(); ++x) {
      if (!usable(x, y)) continue;
      const double dp = tr(pred.values(x, y)) - mp;
      sxx += dp * dp;
      sxy += dp * (tr(gt.values(x, y)) - mg);
    }
  }
  if (sxx > 0.0) {
    a.scale = sxy / sxx;
    a.shift = mg - a.scale * mp;
  } else {
    a.scale = 0.0;
    a.shift = mg;
    a.degenerate = true;
  }

  a.aligned = DepthMap(pred.width(), pred.height());
  for (int y = 0; y < pred.height(); ++y) {
    for (int x = 0; x < pred.width(); ++x) {
      if (!pred.is_valid(x, y)) continue;
      double v = a.scale * tr(pred.values(x, y)) + a.shift;
      if (inv) v = v > 0.0 ? 1.0 / v : 0.0;
      if (v > 0.0 && std::isfinite(v)) {
        a.aligned.set(x, y, v);
      } else {
        ++a.nonpositive;
      }
    }
  }
  return a;
}

double plane_fit_residual(const DisparityMap& disp, const Mask& region) {
  require_same_shape(disp.values, region, "plane_fit_residual");
  std::size_t n = 0;
  double su = 0.0, sv = 0.0, sd = 0.0;
  for (int y = 0; y < disp.height(); ++y) {
    for (int x = 0; x < disp.width(); ++x) {
      if (!region(x, y) || !disp.is_valid(x, y)) continue;
      ++n;
      su += x;
      sv += y;
      sd += disp.values(x, y);
    }
  }
  if (n < 3) throw DegenerateRegionError("plane_fit_residual: fewer than three pixels");
  const double mu = su / static_cast<double>(n), mv = sv / static_cast<double>(n),
               md = sd / static_cast<double>(n);
  double suu = 0.0, suv = 0.0, svv = 0.0, sud = 0.0, svd = 0.0;
  for (int y = 0; y < disp.height(); ++y) {
    for (int x = 0; x < disp.width(); ++x) {
      if (!region(x, y) || !disp.is_valid(x, y)) continue;
      const double du = x - mu, dv = y - mv, dd = disp.values(x, y) - md;
      suu += du * du;
      suv += du * dv;
      svv += dv * dv;
      sud += du * dd;
      svd += dv * dd;
    }
  }
  const double det = suu * svv - suv * suv;
  if (!(det > 1e-12 * suu * svv) || !(suu > 0.0) || !(svv > 0.0)) {
    throw DegenerateRegionError("plane_fit_residual: region pixels are collinear");
  }
  const double a = (sud * svv - svd * suv) / det;
  const double b = (svd * suu - sud * suv) / det;
  double ss = 0.0;
  for (int y = 0; y < disp.height(); ++y) {
    for (int x = 0; x < disp.width(); ++x) {
      if (!region(x, y) || !disp.is_valid(x, y)) continue;
      const double r = (disp.values(x, y) - md) - a * (x - mu) - b * (y - mv);
      ss += r * r;
    }
  }
  return std::sqrt(ss / static_cast<double>(n));
}

InlierStats depth_inlier_compare(const DepthMap& a, const DepthMap& b, double threshold_m) {
  require_same_shape(a.values, b.values, "depth_inlier_compare");
  if (!(threshold_m > 0.0)) throw ArgumentError("depth_inlier_compare: threshold must be positive");
  InlierStats s;
  double sq = 0.0;
  for (int y = 0; y < a.height(); ++y) {
    for (int x = 0; x < a.width(); ++x) {
      if (!a.is_valid(x, y) || !b.is_valid(x, y)) continue;
      ++s.count;
      const double e = a.values(x, y) - b.values(x, y);
      if (std::abs(e) < threshold_m) {
        ++s.inliers;
        sq += e * e;
      }
    }
  }
  if (s.count == 0) throw EmptyStratumError("depth_inlier_compare: no mutually valid pixels");
  s.inlier_percent = 100.0 * static_cast<double>(s.inliers) / static_cast<double>(s.count);
  s.inlier_rmse = s.inliers ? std::sqrt(sq / static_cast<double>(s.inliers)) : kNaN;
  return s;
}

}  // namespace stereogt
