#include "stereogt/calibration_io.hpp"

#include <array>
#include <set>

namespace stereogt {

namespace {

constexpr std::array<const char*, 11> kCameraFields = {"fx", "fy", "cx", "cy", "w",  "h",
                                                       "k1", "k2", "k3", "p1", "p2"};

PinholeCamera read_camera(const KeyValueDoc& doc, const std::string& p) {
  PinholeCamera c;
  c.fx = doc.get_double(p + ".fx");
  c.fy = doc.get_double(p + ".fy");
  c.cx = doc.get_double(p + ".cx");
  c.cy = doc.get_double(p + ".cy");
  c.width = static_cast<int>(doc.get_int(p + ".w"));
  c.height = static_cast<int>(doc.get_int(p + ".h"));
  c.dist.k1 = doc.get_double_or(p + ".k1", 0.0);
  c.dist.k2 = doc.get_double_or(p + ".k2", 0.0);
  c.dist.k3 = doc.get_double_or(p + ".k3", 0.0);
  c.dist.p1 = doc.get_double_or(p + ".p1", 0.0);
  c.dist.p2 = doc.get_double_or(p + ".p2", 0.0);
  try {
    c.validate();
  } catch (const ArgumentError& e) {
    throw FormatError(doc.source() + ": " + p + ": " + e.what());
  }
  return c;
}

void write_camera(const PinholeCamera& c, const std::string& p, KeyValueDoc& doc) {
  doc.set(p + ".fx", c.fx);
  doc.set(p + ".fy", c.fy);
  doc.set(p + ".cx", c.cx);
  doc.set(p + ".cy", c.cy);
  doc.set(p + ".w", static_cast<long long>(c.width));
  doc.set(p + ".h", static_cast<long long>(c.height));
  doc.set(p + ".k1", c.dist.k1);
  doc.set(p + ".k2", c.dist.k2);
  doc.set(p + ".k3", c.dist.k3);
  doc.set(p + ".p1", c.dist.p1);
  doc.set(p + ".p2", c.dist.p2);
}

Eigen::Matrix3d read_matrix(const KeyValueDoc& doc, const std::string& key) {
  const auto v = doc.get_doubles(key, 9);
  Eigen::Matrix3d m;
  for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = v[static_cast<std::size_t>(i)];
  return m;
}

std::vector<double> matrix_values(const Eigen::Matrix3d& m) {
  std::vector<double> v(9);
  for (int i = 0; i < 9; ++i) v[static_cast<std::size_t>(i)] = m(i / 3, i % 3);
  return v;
}

RigidTransform read_transform(const KeyValueDoc& doc, const std::string& p) {
  RigidTransform t;
  t.R = read_matrix(doc, p + ".R");
  const auto tv = doc.get_doubles(p + ".t", 3);
  t.t = Eigen::Vector3d(tv[0], tv[1], tv[2]);
  try {
    t.validate();
  } catch (const ArgumentError& e) {
    throw FormatError(doc.source() + ": " + p + ": " + e.what());
  }
  return t;
}

void write_transform(const RigidTransform& t, const std::string& p, KeyValueDoc& doc) {
  doc.set(p + ".R", matrix_values(t.R));
  doc.set(p + ".t", std::vector<double>{t.t.x(), t.t.y(), t.t.z()});
}

std::set<std::string> known_keys() {
  std::set<std::string> keys;
  for (const char* cam : {"camL", "camC", "camR"}) {
    for (const char* f : kCameraFields) keys.insert(std::string(cam) + "." + f);
  }
  for (const char* rig : {"rig_LR", "rig_LC"}) {
    keys.insert(std::string(rig) + ".R");
    keys.insert(std::string(rig) + ".t");
  }
  return keys;
}

}  // namespace

StereoRig Calibration::stereo_LC() const {
  if (!cam_C || !rig_LC) throw ArgumentError("calibration has no C camera");
  return {cam_L, *cam_C, *rig_LC};
}

Calibration calibration_from_doc(const KeyValueDoc& doc) {
  static const std::set<std::string> known = known_keys();
  for (const auto& [k, v] : doc.entries()) {
    if (k.rfind("rect.", 0) == 0) continue;
    if (!known.count(k)) throw FormatError(doc.source() + ": unknown calibration key '" + k + "'");
  }
  Calibration c;
  c.cam_L = read_camera(doc, "camL");
  c.cam_R = read_camera(doc, "camR");
  c.rig_LR = read_transform(doc, "rig_LR");
  const bool has_c = doc.has("camC.fx");
  const bool has_lc = doc.has("rig_LC.R") || doc.has("rig_LC.t");
  if (has_c != has_lc) {
    throw FormatError(doc.source() + ": camC and rig_LC must be given together");
  }
  if (has_c) {
    c.cam_C = read_camera(doc, "camC");
    c.rig_LC = read_transform(doc, "rig_LC");
  }
  return c;
}

void calibration_to_doc(const Calibration& c, KeyValueDoc& doc) {
  write_camera(c.cam_L, "camL", doc);
  if (c.cam_C) write_camera(*c.cam_C, "camC", doc);
  write_camera(c.cam_R, "camR", doc);
  write_transform(c.rig_LR, "rig_LR", doc);
  if (c.rig_LC) write_transform(*c.rig_LC, "rig_LC", doc);
}

Calibration load_calibration(const std::string& path) {
  return calibration_from_doc(KeyValueDoc::load(path));
}

void save_calibration(const Calibration& calib, const std::string& path) {
  KeyValueDoc doc;
  calibration_to_doc(calib, doc);
  doc.save(path);
}

void rectified_setup_to_doc(const RectifiedSetup& s, const std::string& name, KeyValueDoc& doc) {
  const std::string p = "rect." + name;
  doc.set(p + ".kind", std::string(s.kind == RectificationKind::balanced ? "balanced" : "unbalanced"));
  doc.set(p + ".baseline", s.baseline);
  doc.set(p + ".cropped_side", static_cast<long long>(s.cropped_side));
  doc.set(p + ".K_common", matrix_values(s.K_common));
  doc.set(p + ".common_size", std::vector<double>{double(s.common_width), double(s.common_height)});
  for (const auto& [side, v] : {std::pair{"ref", &s.ref}, std::pair{"tgt", &s.tgt}}) {
    doc.set(p + "." + side + ".K", matrix_values(v->K));
    doc.set(p + "." + side + ".R", matrix_values(v->R));
    doc.set(p + "." + side + ".size", std::vector<double>{double(v->width), double(v->height)});
  }
}

RectifiedSetup rectified_setup_from_doc(const KeyValueDoc& doc, const std::string& name) {
  const std::string p = "rect." + name;
  RectifiedSetup s;
  const std::string kind = doc.get(p + ".kind");
  if (kind == "balanced") {
    s.kind = RectificationKind::balanced;
  } else if (kind == "unbalanced") {
    s.kind = RectificationKind::unbalanced;
  } else {
    throw FormatError(doc.source() + ": " + p + ".kind: unknown value '" + kind + "'");
  }
  s.baseline = doc.get_double(p + ".baseline");
  s.cropped_side = static_cast<int>(doc.get_int(p + ".cropped_side"));
  s.K_common = read_matrix(doc, p + ".K_common");
  const auto cs = doc.get_doubles(p + ".common_size", 2);
  s.common_width = static_cast<int>(cs[0]);
  s.common_height = static_cast<int>(cs[1]);
  for (const auto& [side, v] : {std::pair{"ref", &s.ref}, std::pair{"tgt", &s.tgt}}) {
    v->K = read_matrix(doc, p + "." + side + ".K");
    v->R = read_matrix(doc, p + "." + side + ".R");
    const auto sz = doc.get_doubles(p + "." + side + ".size", 2);
    v->width = static_cast<int>(sz[0]);
    v->height = static_cast<int>(sz[1]);
  }
  return s;
}

}  // namespace stereogt
