#include "stereogt/synthetic.hpp"

#include <Eigen/Geometry>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

namespace stereogt {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t hash4(std::uint64_t seed, std::int64_t a, std::int64_t b, std::int64_t c = 0) {
  std::uint64_t h = mix(seed);
  h = mix(h ^ static_cast<std::uint64_t>(a));
  h = mix(h ^ static_cast<std::uint64_t>(b));
  return mix(h ^ static_cast<std::uint64_t>(c));
}

double unit(std::uint64_t h) { return static_cast<double>(h >> 11) * 0x1.0p-53; }

double smooth(double t) { return t * t * (3.0 - 2.0 * t); }

// Lattice value noise in [0, 1].
double value_noise(std::uint64_t seed, double x, double y) {
  const double fx = std::floor(x), fy = std::floor(y);
  const auto ix = static_cast<std::int64_t>(fx), iy = static_cast<std::int64_t>(fy);
  const double tx = smooth(x - fx), ty = smooth(y - fy);
  const double a = unit(hash4(seed, ix, iy)), b = unit(hash4(seed, ix + 1, iy));
  const double c = unit(hash4(seed, ix, iy + 1)), d = unit(hash4(seed, ix + 1, iy + 1));
  return (a + (b - a) * tx) * (1.0 - ty) + (c + (d - c) * tx) * ty;
}

double fractal_noise(std::uint64_t seed, double x, double y) {
  return 0.55 * value_noise(seed, x, y) + 0.3 * value_noise(seed + 1, 2.0 * x + 17.3, 2.0 * y - 5.1) +
         0.15 * value_noise(seed + 2, 4.0 * x - 3.7, 4.0 * y + 11.9);
}

double gaussian(std::uint64_t h) {
  const double u1 = std::max(unit(h), 0x1.0p-53);
  const double u2 = unit(mix(h ^ 0x5851f42d4c957f2dull));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

const RigidTransform& world_to_camera(const Calibration& c, CameraId cam, RigidTransform& storage) {
  switch (cam) {
    case CameraId::L:
      storage = RigidTransform::identity();
      return storage;
    case CameraId::R:
      return c.rig_LR;
    case CameraId::C:
      if (!c.rig_LC) throw ArgumentError("scene has no C camera");
      return *c.rig_LC;
  }
  return storage;
}

const PinholeCamera& camera_of(const Calibration& c, CameraId cam) {
  switch (cam) {
    case CameraId::L:
      return c.cam_L;
    case CameraId::R:
      return c.cam_R;
    case CameraId::C:
      if (!c.cam_C) throw ArgumentError("scene has no C camera");
      return *c.cam_C;
  }
  return c.cam_L;
}

std::vector<Eigen::Vector3d> corners(const PlaneSurface& p) {
  return {p.origin, p.origin + p.edge_u, p.origin + p.edge_v, p.origin + p.edge_u + p.edge_v};
}

std::vector<Eigen::Vector3d> corners(const BoxSurface& b) {
  std::vector<Eigen::Vector3d> out;
  for (int i = 0; i < 8; ++i) {
    out.emplace_back(i & 1 ? b.hi.x() : b.lo.x(), i & 2 ? b.hi.y() : b.lo.y(), i & 4 ? b.hi.z() : b.lo.z());
  }
  return out;
}

std::vector<double> vec3(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }

Eigen::Vector3d read_vec3(const KeyValueDoc& doc, const std::string& key) {
  const auto v = doc.get_doubles(key, 3);
  return {v[0], v[1], v[2]};
}

}  // namespace

void SceneSpec::validate() const {
  if (frames < 1) throw ArgumentError("scene needs at least one frame");
  if (!(noise_sigma >= 0.0)) throw ArgumentError("noise sigma must be non-negative");
  if (supersample < 1 || supersample > 4) throw ArgumentError("supersample must be 1..4");
  if (!(pattern_cell > 0.0)) throw ArgumentError("pattern cell must be positive");
  if (!(pattern_strength >= 0.0 && pattern_strength < 1.0)) throw ArgumentError("pattern strength must be in [0, 1)");
  calib.stereo_LR().validate();
  if (calib.cam_C) calib.stereo_LC().validate();

  std::vector<RigidTransform> cams{RigidTransform::identity(), calib.rig_LR};
  if (calib.rig_LC) cams.push_back(*calib.rig_LC);
  auto in_front = [&](const std::vector<Eigen::Vector3d>& pts, const std::string& what) {
    for (const auto& T : cams) {
      for (const auto& p : pts) {
        if (T.apply(p).z() <= 1e-6) throw ArgumentError(what + " reaches behind a camera");
      }
    }
  };
  for (std::size_t i = 0; i < planes.size(); ++i) {
    if (planes[i].edge_u.cross(planes[i].edge_v).norm() <= 0.0) throw ArgumentError("degenerate plane");
    if (!(planes[i].texel > 0.0)) throw ArgumentError("plane texel must be positive");
    in_front(corners(planes[i]), "plane " + std::to_string(i));
  }
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    if (!(boxes[i].lo.array() < boxes[i].hi.array()).all()) throw ArgumentError("box needs lo < hi");
    if (!(boxes[i].texel > 0.0)) throw ArgumentError("box texel must be positive");
    in_front(corners(boxes[i]), "box " + std::to_string(i));
  }
  for (const auto& r : regions) {
    if (r.cls < 1 || r.cls > 3) throw ArgumentError("region class must be 1, 2 or 3");
    if (r.x0 < 0 || r.y0 < 0 || r.x1 <= r.x0 || r.y1 <= r.y0) throw ArgumentError("empty or negative region");
  }
}

KeyValueDoc SceneSpec::to_doc() const {
  KeyValueDoc doc;
  calibration_to_doc(calib, doc);
  doc.set("scene.frames", static_cast<long long>(frames));
  doc.set("scene.noise_sigma", noise_sigma);
  doc.set("scene.seed", std::to_string(seed));
  doc.set("scene.projector", vec3(projector));
  doc.set("scene.pattern_cell", pattern_cell);
  doc.set("scene.pattern_strength", pattern_strength);
  doc.set("scene.supersample", static_cast<long long>(supersample));
  for (std::size_t i = 0; i < planes.size(); ++i) {
    const std::string p = "plane." + std::to_string(i) + ".";
    doc.set(p + "origin", vec3(planes[i].origin));
    doc.set(p + "edge_u", vec3(planes[i].edge_u));
    doc.set(p + "edge_v", vec3(planes[i].edge_v));
    doc.set(p + "seed", std::to_string(planes[i].seed));
    doc.set(p + "texel", planes[i].texel);
    doc.set(p + "contrast", planes[i].contrast);
  }
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const std::string p = "box." + std::to_string(i) + ".";
    doc.set(p + "lo", vec3(boxes[i].lo));
    doc.set(p + "hi", vec3(boxes[i].hi));
    doc.set(p + "seed", std::to_string(boxes[i].seed));
    doc.set(p + "texel", boxes[i].texel);
    doc.set(p + "contrast", boxes[i].contrast);
  }
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const std::string p = "region." + std::to_string(i) + ".";
    const auto& r = regions[i];
    doc.set(p + "rect", std::vector<double>{double(r.x0), double(r.y0), double(r.x1), double(r.y1)});
    doc.set(p + "class", static_cast<long long>(r.cls));
  }
  return doc;
}

SceneSpec SceneSpec::from_doc(const KeyValueDoc& doc) {
  KeyValueDoc calib_doc;
  std::set<std::string> scene_keys;
  for (const auto& [k, v] : doc.entries()) {
    if (k.rfind("cam", 0) == 0 || k.rfind("rig_", 0) == 0) {
      calib_doc.set(k, v);
    } else {
      scene_keys.insert(k);
    }
  }
  SceneSpec s;
  s.calib = calibration_from_doc(calib_doc);
  std::set<std::string> used;
  auto take = [&](const std::string& key) -> const std::string& {
    used.insert(key);
    return doc.get(key);
  };
  auto opt = [&](const std::string& key) {
    const bool h = doc.has(key);
    if (h) used.insert(key);
    return h;
  };
  try {
    if (opt("scene.frames")) s.frames = static_cast<int>(doc.get_int("scene.frames"));
    if (opt("scene.noise_sigma")) s.noise_sigma = doc.get_double("scene.noise_sigma");
    if (opt("scene.seed")) s.seed = doc.get_u64_or("scene.seed", s.seed);
    if (opt("scene.projector")) s.projector = read_vec3(doc, "scene.projector");
    if (opt("scene.pattern_cell")) s.pattern_cell = doc.get_double("scene.pattern_cell");
    if (opt("scene.pattern_strength")) s.pattern_strength = doc.get_double("scene.pattern_strength");
    if (opt("scene.supersample")) s.supersample = static_cast<int>(doc.get_int("scene.supersample"));
    for (int i = 0; doc.has("plane." + std::to_string(i) + ".origin"); ++i) {
      const std::string p = "plane." + std::to_string(i) + ".";
      PlaneSurface pl;
      take(p + "origin");
      pl.origin = read_vec3(doc, p + "origin");
      take(p + "edge_u");
      pl.edge_u = read_vec3(doc, p + "edge_u");
      take(p + "edge_v");
      pl.edge_v = read_vec3(doc, p + "edge_v");
      if (opt(p + "seed")) pl.seed = doc.get_u64_or(p + "seed", pl.seed);
      if (opt(p + "texel")) pl.texel = doc.get_double(p + "texel");
      if (opt(p + "contrast")) pl.contrast = doc.get_double(p + "contrast");
      s.planes.push_back(pl);
    }
    for (int i = 0; doc.has("box." + std::to_string(i) + ".lo"); ++i) {
      const std::string p = "box." + std::to_string(i) + ".";
      BoxSurface b;
      take(p + "lo");
      b.lo = read_vec3(doc, p + "lo");
      take(p + "hi");
      b.hi = read_vec3(doc, p + "hi");
      if (opt(p + "seed")) b.seed = doc.get_u64_or(p + "seed", b.seed);
      if (opt(p + "texel")) b.texel = doc.get_double(p + "texel");
      if (opt(p + "contrast")) b.contrast = doc.get_double(p + "contrast");
      s.boxes.push_back(b);
    }
    for (int i = 0; doc.has("region." + std::to_string(i) + ".rect"); ++i) {
      const std::string p = "region." + std::to_string(i) + ".";
      take(p + "rect");
      const auto r = doc.get_doubles(p + "rect", 4);
      AmbiguousRegion reg{static_cast<int>(r[0]), static_cast<int>(r[1]), static_cast<int>(r[2]),
                          static_cast<int>(r[3]), 3};
      if (opt(p + "class")) reg.cls = static_cast<int>(doc.get_int(p + "class"));
      s.regions.push_back(reg);
    }
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(doc.source() + ": " + e.what());
  }
  for (const auto& k : scene_keys) {
    if (!used.count(k)) throw FormatError(doc.source() + ": unknown scene key '" + k + "'");
  }
  try {
    s.validate();
  } catch (const ArgumentError& e) {
    throw FormatError(doc.source() + ": " + e.what());
  }
  return s;
}

struct SyntheticScene::Hit {
  double t = std::numeric_limits<double>::infinity();
  double s = 0.0, u = 0.0;  // texture coordinates, meters
  std::uint64_t seed = 0;
  double texel = 1.0;
  double contrast = 0.0;
};

SyntheticScene::SyntheticScene(SceneSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  lr_ = rectify_balanced(spec_.calib.stereo_LR());
  if (spec_.calib.cam_C) lc_ = rectify_unbalanced(spec_.calib.stereo_LC());
  for (const auto& r : spec_.regions) {
    if (r.x1 > lr_.ref.width || r.y1 > lr_.ref.height) throw ArgumentError("region exceeds the rectified image");
  }
}

const RectifiedSetup& SyntheticScene::lc() const {
  if (!lc_) throw ArgumentError("scene has no C camera");
  return *lc_;
}

View SyntheticScene::raw_view(CameraId cam) const {
  RigidTransform storage;
  const RigidTransform& T = world_to_camera(spec_.calib, cam, storage);
  const PinholeCamera& c = camera_of(spec_.calib, cam);
  View v;
  v.K = c.K();
  v.R = T.R;
  v.center = -T.R.transpose() * T.t;
  v.dist = c.dist;
  v.width = c.width;
  v.height = c.height;
  v.camera = cam;
  return v;
}

View SyntheticScene::rectified_view(const RectifiedSetup& setup, bool reference, CameraId cam) const {
  RigidTransform storage;
  const RigidTransform& T = world_to_camera(spec_.calib, cam, storage);
  const RectifiedView& rv = reference ? setup.ref : setup.tgt;
  View v;
  v.K = rv.K;
  v.R = rv.R * T.R;
  v.center = -T.R.transpose() * T.t;
  v.width = rv.width;
  v.height = rv.height;
  v.camera = cam;
  v.rectified = true;
  return v;
}

bool SyntheticScene::intersect(const Eigen::Vector3d& o, const Eigen::Vector3d& dir, Hit& hit) const {
  bool found = false;
  for (const auto& p : spec_.planes) {
    const Eigen::Vector3d n = p.edge_u.cross(p.edge_v);
    const double denom = n.dot(dir);
    if (std::abs(denom) < 1e-15) continue;
    const double t = n.dot(p.origin - o) / denom;
    if (!(t > 1e-9) || t >= hit.t) continue;
    const Eigen::Vector3d rel = o + t * dir - p.origin;
    const double uu = p.edge_u.squaredNorm(), uv = p.edge_u.dot(p.edge_v), vv = p.edge_v.squaredNorm();
    const double a = rel.dot(p.edge_u), b = rel.dot(p.edge_v);
    const double det = uu * vv - uv * uv;
    const double s = (a * vv - b * uv) / det, q = (b * uu - a * uv) / det;
    if (s < 0.0 || s > 1.0 || q < 0.0 || q > 1.0) continue;
    hit.t = t;
    hit.s = s * std::sqrt(uu);
    hit.u = q * std::sqrt(vv);
    hit.seed = p.seed;
    hit.texel = p.texel;
    hit.contrast = p.contrast;
    found = true;
  }
  for (const auto& b : spec_.boxes) {
    double t0 = -std::numeric_limits<double>::infinity(), t1 = std::numeric_limits<double>::infinity();
    int axis = -1;
    bool miss = false;
    for (int k = 0; k < 3 && !miss; ++k) {
      if (std::abs(dir[k]) < 1e-15) {
        if (o[k] < b.lo[k] || o[k] > b.hi[k]) miss = true;
        continue;
      }
      double ta = (b.lo[k] - o[k]) / dir[k], tb = (b.hi[k] - o[k]) / dir[k];
      if (ta > tb) std::swap(ta, tb);
      if (ta > t0) {
        t0 = ta;
        axis = k;
      }
      t1 = std::min(t1, tb);
      if (t0 > t1) miss = true;
    }
    if (miss || axis < 0 || !(t0 > 1e-9) || t0 >= hit.t) continue;
    const Eigen::Vector3d X = o + t0 * dir;
    hit.t = t0;
    hit.s = X[(axis + 1) % 3];
    hit.u = X[(axis + 2) % 3];
    hit.seed = b.seed + static_cast<std::uint64_t>(axis) * 7919u + (dir[axis] > 0.0 ? 1u : 0u);
    hit.texel = b.texel;
    hit.contrast = b.contrast;
    found = true;
  }
  return found;
}

bool SyntheticScene::cast(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir, double& t) const {
  Hit hit;
  if (!intersect(origin, dir, hit)) return false;
  t = hit.t;
  return true;
}

int SyntheticScene::region_class(const Eigen::Vector3d& world) const {
  if (spec_.regions.empty()) return 0;
  const Eigen::Vector3d p = lr_.ref.K * (lr_.ref.R * world);
  if (!(p.z() > 0.0)) return 0;
  const double u = std::floor(p.x() / p.z() + 0.5), v = std::floor(p.y() / p.z() + 0.5);
  int cls = 0;
  for (const auto& r : spec_.regions) {
    if (u >= r.x0 && u < r.x1 && v >= r.y0 && v < r.y1) cls = std::max(cls, r.cls);
  }
  return cls;
}

double SyntheticScene::shade(const Hit& hit, const Eigen::Vector3d& world, int cls, const View& view, double px,
                             double py, int frame) const {
  double albedo = 0.5 + hit.contrast * (fractal_noise(hit.seed, hit.s / hit.texel, hit.u / hit.texel) - 0.5);
  double pattern = 1.0;
  const Eigen::Vector3d q = world - spec_.projector;
  if (spec_.pattern_strength > 0.0 && q.z() > 1e-9) {
    const std::uint64_t pseed = hash4(spec_.seed, 0x70617474, frame);
    const double n = value_noise(pseed, q.x() / q.z() / spec_.pattern_cell, q.y() / q.z() / spec_.pattern_cell);
    pattern = 1.0 - spec_.pattern_strength + 2.0 * spec_.pattern_strength * n;
  }
  if (cls == 1) {
    albedo = 0.5 + 0.25 * (albedo - 0.5);
    pattern = 1.0 + 0.25 * (pattern - 1.0);
  }
  double value = 255.0 * 0.6 * albedo * pattern;
  if ((cls == 2 || cls == 3) && view.camera != CameraId::L) {
    const std::uint64_t aseed = hash4(spec_.seed, 0x616d6267, frame, static_cast<int>(view.camera));
    const double alt = 255.0 * (0.1 + 0.8 * value_noise(aseed, px / 1.3, py / 1.3));
    value = cls == 3 ? alt : 0.5 * value + 0.5 * alt;
  }
  return value;
}

ViewRender SyntheticScene::render_geometry(const View& view) const {
  ViewRender out;
  out.image = ImageF(view.width, view.height, 0.0f);
  out.depth = Image<double>(view.width, view.height, kNaN);
  out.material = MaterialMask(view.width, view.height, 0);
  const Eigen::Matrix3d K_inv = view.K.inverse();
  const Eigen::Matrix3d Rt = view.R.transpose();
  for (int y = 0; y < view.height; ++y) {
    for (int x = 0; x < view.width; ++x) {
      Eigen::Vector3d n = K_inv * Eigen::Vector3d(x, y, 1.0);
      Eigen::Vector2d xy(n.x() / n.z(), n.y() / n.z());
      if (!view.dist.is_zero()) xy = undistort(view.dist, xy);
      const Eigen::Vector3d dir = Rt * Eigen::Vector3d(xy.x(), xy.y(), 1.0);
      Hit hit;
      if (!intersect(view.center, dir, hit)) continue;
      out.depth(x, y) = hit.t;
      out.material(x, y) = static_cast<std::uint8_t>(region_class(view.center + hit.t * dir));
    }
  }
  return out;
}

ViewRender SyntheticScene::render(const View& view, int frame) const {
  ViewRender out = render_geometry(view);
  const Eigen::Matrix3d K_inv = view.K.inverse();
  const Eigen::Matrix3d Rt = view.R.transpose();
  const int ss = spec_.supersample;
  const std::uint64_t nseed = hash4(spec_.seed, 0x6e6f6973, frame, static_cast<int>(view.camera) * 2 + view.rectified);
  for (int y = 0; y < view.height; ++y) {
    for (int x = 0; x < view.width; ++x) {
      double acc = 0.0;
      for (int j = 0; j < ss; ++j) {
        for (int i = 0; i < ss; ++i) {
          const double px = x + (i + 0.5) / ss - 0.5, py = y + (j + 0.5) / ss - 0.5;
          Eigen::Vector3d n = K_inv * Eigen::Vector3d(px, py, 1.0);
          Eigen::Vector2d xy(n.x() / n.z(), n.y() / n.z());
          if (!view.dist.is_zero()) xy = undistort(view.dist, xy);
          const Eigen::Vector3d dir = Rt * Eigen::Vector3d(xy.x(), xy.y(), 1.0);
          Hit hit;
          if (!intersect(view.center, dir, hit)) continue;
          const Eigen::Vector3d X = view.center + hit.t * dir;
          acc += shade(hit, X, region_class(X), view, px, py, frame);
        }
      }
      double v = acc / (ss * ss);
      if (spec_.noise_sigma > 0.0) v += spec_.noise_sigma * gaussian(hash4(nseed, x, y));
      out.image(x, y) = static_cast<float>(std::round(std::clamp(v, 0.0, 255.0)));
    }
  }
  return out;
}

SceneGroundTruth SyntheticScene::ground_truth() const {
  const View left = rectified_view(lr_, true, CameraId::L);
  const View right = rectified_view(lr_, false, CameraId::R);
  const ViewRender gl = render_geometry(left), gr = render_geometry(right);
  const double fb = lr_.ref.focal() * lr_.baseline;
  const int W = left.width, H = left.height;
  SceneGroundTruth gt{DisparityMap(W, H), DisparityMap(W, H), Mask(W, H, 0), Mask(W, H, 0), gl.material};

  auto fill = [&](const View& from, const ViewRender& geo, const View& other, DisparityMap& disp, Mask& occ) {
    const Eigen::Matrix3d K_inv = from.K.inverse();
    for (int y = 0; y < H; ++y) {
      for (int x = 0; x < W; ++x) {
        const double z = geo.depth(x, y);
        if (!std::isfinite(z)) continue;
        const double d = fb / z;
        if (d > kMinPositive) disp.set(x, y, d);
        const Eigen::Vector3d X = from.center + z * (from.R.transpose() * (K_inv * Eigen::Vector3d(x, y, 1.0)));
        const Eigen::Vector3d p = other.K * (other.R * (X - other.center));
        const double u = p.x() / p.z(), v = p.y() / p.z();
        bool visible = p.z() > 0.0 && u >= -0.5 && u < W - 0.5 && v >= -0.5 && v < H - 0.5;
        if (visible) {
          double t = 0.0;
          if (cast(other.center, X - other.center, t) && t < 1.0 - 1e-6) visible = false;
        }
        occ(x, y) = visible ? 0 : 1;
      }
    }
  };
  fill(left, gl, right, gt.disp_left, gt.occlusion_left);
  fill(right, gr, left, gt.disp_right, gt.occlusion_right);
  return gt;
}

RenderedScene SyntheticScene::render_scene(int frame) const {
  RenderedScene out;
  out.setup = lr_;
  out.left = render(rectified_view(lr_, true, CameraId::L), frame).image;
  out.right = render(rectified_view(lr_, false, CameraId::R), frame).image;
  out.gt = ground_truth();
  return out;
}

UnbalancedRender SyntheticScene::render_unbalanced(int frame) const {
  const RectifiedSetup& s = lc();
  UnbalancedRender out;
  out.setup = s;
  const ViewRender left = render(rectified_view(s, true, CameraId::L), frame);
  out.left = left.image;
  out.center = render(rectified_view(s, false, CameraId::C), frame).image;
  out.material = left.material;
  const double fb = s.ref.focal() * s.baseline;
  out.gt_disp = DisparityMap(left.depth.width(), left.depth.height());
  for (int y = 0; y < left.depth.height(); ++y) {
    for (int x = 0; x < left.depth.width(); ++x) {
      const double z = left.depth(x, y);
      if (std::isfinite(z) && fb / z > kMinPositive) out.gt_disp.set(x, y, fb / z);
    }
  }
  return out;
}

RenderedScene render_scene(const SceneSpec& spec, int frame) { return SyntheticScene(spec).render_scene(frame); }

UnbalancedRender render_unbalanced(const SceneSpec& spec, int frame) {
  return SyntheticScene(spec).render_unbalanced(frame);
}

Calibration ideal_rig(int width, int height, double focal, double baseline) {
  Calibration c;
  c.cam_L = PinholeCamera{focal, focal, (width - 1) * 0.5, (height - 1) * 0.5, width, height, {}};
  c.cam_R = c.cam_L;
  c.rig_LR.t = Eigen::Vector3d(-baseline, 0.0, 0.0);
  return c;
}

SceneSpec plane_scene(const Calibration& calib, double z0, double slope_x, double slope_y, std::uint64_t seed) {
  SceneSpec s;
  s.calib = calib;
  s.seed = seed;
  const PinholeCamera& cam = calib.cam_L;
  const double b = calib.rig_LR.t.norm();
  const double X = 0.75 * z0 * cam.width / cam.fx + 2.0 * b;
  const double Y = 0.75 * z0 * cam.height / cam.fy + 2.0 * b;
  PlaneSurface p;
  p.origin = Eigen::Vector3d(-X, -Y, z0 - slope_x * X - slope_y * Y);
  p.edge_u = Eigen::Vector3d(2.0 * X, 0.0, 2.0 * X * slope_x);
  p.edge_v = Eigen::Vector3d(0.0, 2.0 * Y, 2.0 * Y * slope_y);
  p.seed = seed * 31 + 7;
  p.texel = 1.5 * z0 / cam.fx;
  s.planes.push_back(p);
  s.projector = Eigen::Vector3d(0.5 * b, -0.3 * b, 0.0);
  s.pattern_cell = 1.5 / cam.fx;
  return s;
}

SceneSpec desk_scene(std::uint64_t seed, int width, int height) {
  const double f = width;
  const double b = 0.08;
  Calibration c;
  c.cam_L = PinholeCamera{f, f, (width - 1) * 0.5 + 1.5, (height - 1) * 0.5 - 1.0, width, height, {-0.02, 0.0, 0.0, 0.0, 0.0}};
  c.cam_R = PinholeCamera{f * 1.004, f * 1.004, (width - 1) * 0.5 - 2.0, (height - 1) * 0.5 + 0.5, width, height,
                          {-0.015, 0.0, 0.0, 0.0, 0.0}};
  c.rig_LR.R = rotation_from_euler(0.004, -0.002, 0.003);
  c.rig_LR.t = -c.rig_LR.R * Eigen::Vector3d(b, 0.001, 0.0005);
  const int wc = width / 2, hc = height / 2;
  const double fc = 1.3 * wc;
  c.cam_C = PinholeCamera{fc, fc, (wc - 1) * 0.5, (hc - 1) * 0.5, wc, hc, {}};
  RigidTransform lc;
  lc.R = rotation_from_euler(-0.003, 0.002, 0.004);
  lc.t = -lc.R * Eigen::Vector3d(0.5 * b, -0.001, 0.0);
  c.rig_LC = lc;

  SceneSpec s = plane_scene(c, 2.2, 0.25, 0.1, seed);
  s.planes[0].texel = 0.01;
  BoxSurface box;
  box.lo = Eigen::Vector3d(-0.25, -0.05, 1.1);
  box.hi = Eigen::Vector3d(0.05, 0.25, 1.35);
  box.seed = seed * 31 + 11;
  box.texel = 0.005;
  s.boxes.push_back(box);
  const double sx = width / 320.0, sy = height / 240.0;
  auto rect = [&](int x0, int y0, int x1, int y1, int cls) {
    return AmbiguousRegion{static_cast<int>(x0 * sx), static_cast<int>(y0 * sy), static_cast<int>(x1 * sx),
                           static_cast<int>(y1 * sy), cls};
  };
  s.regions = {rect(200, 40, 270, 100, 3), rect(225, 140, 290, 195, 2), rect(15, 160, 75, 215, 1)};
  s.frames = 6;
  s.noise_sigma = 3.0;
  return s;
}

}  // namespace stereogt
