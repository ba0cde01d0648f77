#include "stereogt/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>

#include "stereogt/kv_text.hpp"

namespace stereogt {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double v) { return std::isnan(v) ? "nan" : format_double(v); }

double parse_num(std::string_view tok, const std::string& source) {
  if (tok == "nan") return kNaN;
  double v = 0.0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
    throw FormatError(source + ": bad number '" + std::string(tok) + "'");
  }
  return v;
}

Mask class_mask(const Mask& material, int cls) {
  Mask m(material.width(), material.height(), 0);
  for (std::size_t i = 0; i < material.size(); ++i) m.data()[i] = material.data()[i] == cls ? 1 : 0;
  return m;
}

template <class Fn>
void for_each_stratum(const Strata& strata, int width, int height, Fn&& fn) {
  const Mask all(width, height, 1);
  fn("all", all);
  if (strata.consistency) {
    require_same_shape(all, *strata.consistency, "stratify");
    fn("cons", *strata.consistency);
  }
  if (strata.material) {
    require_same_shape(all, *strata.material, "stratify");
    for (int c = 0; c <= 3; ++c) fn("class" + std::to_string(c), class_mask(*strata.material, c));
  }
  for (const auto& [name, mask] : strata.custom) {
    require_same_shape(all, mask, "stratify");
    fn(name, mask);
  }
}

int integer_ratio(int big, int small) {
  if (small <= 0 || big % small != 0) return 0;
  return big / small;
}

// Returns the factor by which coordinates grow (> 0) or shrink (< 0).
int resample_factor(int w, int h, int width, int height) {
  if (w == width && h == height) return 1;
  if (width > w) {
    const int k = integer_ratio(width, w);
    if (k > 0 && integer_ratio(height, h) == k) return k;
  } else {
    const int k = integer_ratio(w, width);
    if (k > 0 && integer_ratio(h, height) == k) return -k;
  }
  throw ResolutionError("cannot resample " + std::to_string(w) + "x" + std::to_string(h) + " to " +
                        std::to_string(width) + "x" + std::to_string(height) + " by an integer factor");
}

template <class T>
Image<T> resample_image(const Image<T>& img, int width, int height, int factor) {
  Image<T> out(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const int sx = factor > 0 ? x / factor : -factor * x + (-factor) / 2;
      const int sy = factor > 0 ? y / factor : -factor * y + (-factor) / 2;
      out(x, y) = img(sx, sy);
    }
  }
  return out;
}

template <class Tag>
ScalarMap<Tag> resample_map(const ScalarMap<Tag>& m, int width, int height, bool scale_values) {
  const int k = resample_factor(m.width(), m.height(), width, height);
  if (k == 1) return m;
  const double s = !scale_values ? 1.0 : k > 0 ? static_cast<double>(k) : 1.0 / static_cast<double>(-k);
  ScalarMap<Tag> out;
  out.values = resample_image(m.values, width, height, k);
  out.valid = resample_image(m.valid, width, height, k);
  for (auto& v : out.values.pixels()) v *= s;
  if (m.variance) {
    out.variance = resample_image(*m.variance, width, height, k);
    for (auto& v : out.variance->pixels()) v *= s * s;
  }
  return out;
}

template <class Tag>
std::pair<ScalarMap<Tag>, ScalarMap<Tag>> prepare(const ScalarMap<Tag>& pred, const ScalarMap<Tag>& gt,
                                                  EvalMode mode, bool scale_values) {
  ScalarMap<Tag> g = gt;
  if (mode == EvalMode::quarter) {
    if (gt.width() % 4 != 0 || gt.height() % 4 != 0) {
      throw ResolutionError("quarter evaluation needs gt dimensions divisible by 4");
    }
    g = resample_map(gt, gt.width() / 4, gt.height() / 4, scale_values);
  }
  return {resample_map(pred, g.width(), g.height(), scale_values), std::move(g)};
}

}  // namespace

StratumRecord::StratumRecord()
    : bad2(kNaN), bad4(kNaN), bad6(kNaN), bad8(kNaN), mae(kNaN), rmse(kNaN), delta105(kNaN), delta115(kNaN),
      delta125(kNaN), abs_rel(kNaN) {}

const StratumRecord* EvalReport::find(std::string_view stratum) const {
  for (const auto& r : records) {
    if (r.stratum == stratum) return &r;
  }
  return nullptr;
}

std::string EvalReport::to_text() const {
  std::string out;
  for (const auto& r : records) {
    out += std::string("kind=") + (kind == EvalKind::stereo ? "stereo" : "mono") + " stratum=" + r.stratum +
           " empty=" + (r.empty ? "1" : "0") + " count=" + std::to_string(r.pixel_count) +
           " excluded=" + std::to_string(r.excluded) + " bad2=" + num(r.bad2) + " bad4=" + num(r.bad4) +
           " bad6=" + num(r.bad6) + " bad8=" + num(r.bad8) + " mae=" + num(r.mae) + " rmse=" + num(r.rmse) +
           " delta105=" + num(r.delta105) + " delta115=" + num(r.delta115) + " delta125=" + num(r.delta125) +
           " abs_rel=" + num(r.abs_rel) + "\n";
  }
  return out;
}

std::string EvalReport::to_table() const {
  std::string out;
  char buf[256];
  if (kind == EvalKind::stereo) {
    std::snprintf(buf, sizeof buf, "%-10s %9s %8s %8s %8s %8s %9s %9s\n", "stratum", "pixels", "bad-2", "bad-4",
                  "bad-6", "bad-8", "MAE", "RMSE");
  } else {
    std::snprintf(buf, sizeof buf, "%-10s %9s %8s %8s %8s %9s %9s %9s\n", "stratum", "pixels", "d<1.05", "d<1.15",
                  "d<1.25", "MAE", "AbsRel", "RMSE");
  }
  out += buf;
  for (const auto& r : records) {
    if (r.empty) {
      std::snprintf(buf, sizeof buf, "%-10s %9zu  (empty)\n", r.stratum.c_str(), r.pixel_count);
    } else if (kind == EvalKind::stereo) {
      std::snprintf(buf, sizeof buf, "%-10s %9zu %8.2f %8.2f %8.2f %8.2f %9.4f %9.4f\n", r.stratum.c_str(),
                    r.pixel_count, r.bad2, r.bad4, r.bad6, r.bad8, r.mae, r.rmse);
    } else {
      std::snprintf(buf, sizeof buf, "%-10s %9zu %8.2f %8.2f %8.2f %9.4f %9.4f %9.4f\n", r.stratum.c_str(),
                    r.pixel_count, r.delta105, r.delta115, r.delta125, r.mae, r.abs_rel, r.rmse);
    }
    out += buf;
  }
  return out;
}

EvalReport EvalReport::parse(std::string_view text, const std::string& source) {
  EvalReport rep;
  std::istringstream in{std::string(text)};
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    StratumRecord r;
    std::optional<EvalKind> kind;
    while (ls >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) throw FormatError(source + ": malformed field '" + tok + "'");
      const std::string key = tok.substr(0, eq);
      const std::string_view val = std::string_view(tok).substr(eq + 1);
      if (key == "kind") {
        if (val == "stereo") kind = EvalKind::stereo;
        else if (val == "mono") kind = EvalKind::mono;
        else throw FormatError(source + ": unknown report kind");
      } else if (key == "stratum") {
        r.stratum = std::string(val);
      } else if (key == "empty") {
        r.empty = val == "1";
      } else if (key == "count") {
        r.pixel_count = static_cast<std::size_t>(parse_num(val, source));
      } else if (key == "excluded") {
        r.excluded = static_cast<std::size_t>(parse_num(val, source));
      } else {
        double* field = key == "bad2" ? &r.bad2 : key == "bad4" ? &r.bad4 : key == "bad6" ? &r.bad6
                      : key == "bad8" ? &r.bad8 : key == "mae" ? &r.mae : key == "rmse" ? &r.rmse
                      : key == "delta105" ? &r.delta105 : key == "delta115" ? &r.delta115
                      : key == "delta125" ? &r.delta125 : key == "abs_rel" ? &r.abs_rel : nullptr;
        if (!field) throw FormatError(source + ": unknown field '" + key + "'");
        *field = parse_num(val, source);
      }
    }
    if (!kind || r.stratum.empty()) throw FormatError(source + ": record without kind or stratum");
    if (first) rep.kind = *kind;
    else if (rep.kind != *kind) throw FormatError(source + ": mixed report kinds");
    first = false;
    rep.records.push_back(std::move(r));
  }
  return rep;
}

EvalReport stratify_stereo(const DisparityMap& pred, const DisparityMap& gt, const Strata& strata) {
  require_same_shape(pred.values, gt.values, "stratify_stereo");
  EvalReport rep;
  rep.kind = EvalKind::stereo;
  for_each_stratum(strata, gt.width(), gt.height(), [&](const std::string& name, const Mask& mask) {
    StratumRecord r;
    r.stratum = name;
    try {
      const auto m = stereo_metrics(pred, gt, &mask);
      r.pixel_count = m.count;
      r.excluded = m.missing;
      r.bad2 = m.bad2;
      r.bad4 = m.bad4;
      r.bad6 = m.bad6;
      r.bad8 = m.bad8;
      r.mae = m.mae;
      r.rmse = m.rmse;
    } catch (const EmptyStratumError&) {
      r.empty = true;
    }
    rep.records.push_back(std::move(r));
  });
  return rep;
}

EvalReport stratify_mono(const DepthMap& pred, const DepthMap& gt, const Strata& strata, AlignSpace space) {
  require_same_shape(pred.values, gt.values, "stratify_mono");
  const Alignment align = scale_shift_align(pred, gt, nullptr, space);
  EvalReport rep;
  rep.kind = EvalKind::mono;
  for_each_stratum(strata, gt.width(), gt.height(), [&](const std::string& name, const Mask& mask) {
    StratumRecord r;
    r.stratum = name;
    try {
      const auto m = mono_metrics(align.aligned, gt, &mask);
      r.pixel_count = m.count;
      r.excluded = m.excluded;
      r.delta105 = m.delta105;
      r.delta115 = m.delta115;
      r.delta125 = m.delta125;
      r.mae = m.mae;
      r.abs_rel = m.abs_rel;
      r.rmse = m.rmse;
    } catch (const EmptyStratumError&) {
      r.empty = true;
    }
    rep.records.push_back(std::move(r));
  });
  return rep;
}

std::pair<DisparityMap, DisparityMap> prepare_resolutions(const DisparityMap& pred, const DisparityMap& gt,
                                                          EvalMode mode) {
  return prepare(pred, gt, mode, true);
}

std::pair<DepthMap, DepthMap> prepare_resolutions(const DepthMap& pred, const DepthMap& gt, EvalMode mode) {
  return prepare(pred, gt, mode, false);
}

DisparityMap resample_disparity(const DisparityMap& disp, int width, int height) {
  return resample_map(disp, width, height, true);
}

DepthMap resample_depth(const DepthMap& depth, int width, int height) {
  return resample_map(depth, width, height, false);
}

Mask resample_mask(const Mask& mask, int width, int height) {
  const int k = resample_factor(mask.width(), mask.height(), width, height);
  return k == 1 ? mask : resample_image(mask, width, height, k);
}

}  // namespace stereogt
