#include "pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>
#include <vector>

#include "stereogt/calibration_io.hpp"
#include "stereogt/camera.hpp"
#include "stereogt/disparity_ops.hpp"
#include "stereogt/file_io.hpp"
#include "stereogt/io_pfm.hpp"
#include "stereogt/io_png.hpp"
#include "stereogt/point_cloud.hpp"
#include "stereogt/rectification.hpp"
#include "stereogt/rle_mask.hpp"
#include "stereogt/synthetic.hpp"
#include "stereogt/warp.hpp"

namespace fs = std::filesystem;

namespace stereogt::app {

namespace {

std::string join(const std::string& dir, const std::string& rel) { return (fs::path(dir) / rel).string(); }

bool exists(const std::string& path) { return fs::exists(fs::path(path)); }

void ensure_parent(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (parent.empty()) return;
  std::error_code ec;
  fs::create_directories(parent, ec);
  if (ec) throw IoError(parent.string() + ": cannot create directory (" + ec.message() + ")");
}

std::string resolve(const std::string& base, const std::string& p) {
  if (p.empty() || fs::path(p).is_absolute() || base.empty()) return p;
  return (fs::path(base) / p).lexically_normal().string();
}

const std::string& scene_dir(const PipelineConfig& cfg) {
  if (cfg.scene_dir.empty()) throw ConfigError("no scene directory: pass --out or set scene_dir");
  return cfg.scene_dir;
}

std::string in_scene(const PipelineConfig& cfg, const char* rel) { return join(scene_dir(cfg), rel); }

std::string require_input(const std::string& path, const std::string& what) {
  if (!exists(path)) throw IoError(path + ": missing " + what);
  return path;
}

void write_mask(const std::string& path, const Mask& m) {
  ensure_parent(path);
  write_png(path, m);
}

Mask read_mask(const std::string& path) {
  Mask m = read_png8(path);
  for (auto v : m.pixels()) {
    if (v > 1) throw FormatError(path + ": binary mask holds value " + std::to_string(v));
  }
  return m;
}

MaterialMask read_material(const std::string& path) {
  MaterialMask m = read_png8(path);
  validate_material_mask(m, path);
  return m;
}

void write_gray(const std::string& path, const ImageF& img) {
  ensure_parent(path);
  write_png(path, to_gray8(img));
}

std::vector<ImageF> read_frames(const std::string& dir, const char* side) {
  std::vector<ImageF> frames;
  for (int t = 0;; ++t) {
    const std::string p = bundle::frame_path(dir, side, t);
    if (!exists(p)) break;
    frames.push_back(to_float(read_png8(p)));
  }
  if (frames.empty()) throw IoError(bundle::frame_path(dir, side, 0) + ": no frames found");
  return frames;
}

struct Setups {
  RectifiedSetup lr;
  std::optional<RectifiedSetup> lc;
};

void save_setups(const std::string& path, const RectifiedSetup& lr, const std::optional<RectifiedSetup>& lc) {
  KeyValueDoc doc;
  rectified_setup_to_doc(lr, "lr", doc);
  if (lc) rectified_setup_to_doc(*lc, "lc", doc);
  ensure_parent(path);
  doc.save(path);
}

Setups load_setups(const std::string& path) {
  const KeyValueDoc doc = KeyValueDoc::load(require_input(path, "rectification"));
  Setups s{rectified_setup_from_doc(doc, "lr"), std::nullopt};
  if (!doc.keys_with_prefix("rect.lc.").empty()) s.lc = rectified_setup_from_doc(doc, "lc");
  return s;
}

void check_size(const DisparityMap& d, int w, int h, const std::string& what) {
  if (d.width() != w || d.height() != h) {
    throw ShapeError(what + " is " + std::to_string(d.width()) + "x" + std::to_string(d.height()) + ", expected " +
                     std::to_string(w) + "x" + std::to_string(h));
  }
}

SceneSpec synth_spec(const PipelineConfig& cfg) {
  SceneSpec spec;
  if (!cfg.synth_spec.empty()) {
    spec = SceneSpec::from_doc(KeyValueDoc::load(cfg.synth_spec));
  } else if (cfg.synth_kind == "desk") {
    spec = desk_scene(cfg.seed.value_or(1), cfg.synth_width, cfg.synth_height);
  } else if (cfg.synth_kind == "plane") {
    spec = plane_scene(ideal_rig(cfg.synth_width, cfg.synth_height, cfg.synth_width, 0.1), 1.0, 0.2, 0.1,
                       cfg.seed.value_or(1));
    spec.frames = 8;
  } else {
    throw ConfigError("synth.scene must be desk or plane, got '" + cfg.synth_kind + "'");
  }
  if (cfg.seed) spec.seed = *cfg.seed;
  if (cfg.synth_frames > 0) spec.frames = cfg.synth_frames;
  spec.validate();
  return spec;
}

Strata build_strata(const Mask* cons, const Mask* material) {
  Strata s;
  s.consistency = cons;
  s.material = material;
  return s;
}

std::string eval_disparity(const DisparityMap& pred_in, const DisparityMap& gt_in, const std::string& cons_path,
                           const std::string& material_path, EvalMode mode, const std::string& report_path) {
  auto [pred, gt] = prepare_resolutions(pred_in, gt_in, mode);
  std::optional<Mask> cons, material;
  if (!cons_path.empty() && exists(cons_path)) cons = resample_mask(read_mask(cons_path), gt.width(), gt.height());
  if (!material_path.empty() && exists(material_path)) {
    material = resample_mask(read_material(material_path), gt.width(), gt.height());
  }
  const EvalReport rep = stratify_stereo(pred, gt, build_strata(cons ? &*cons : nullptr, material ? &*material : nullptr));
  ensure_parent(report_path);
  write_file(report_path, rep.to_text());
  return rep.to_table();
}

}  // namespace

namespace bundle {

std::string frame_path(const std::string& dir, const char* side, int t) {
  char name[64];
  std::snprintf(name, sizeof name, "frames/%s_%03d.png", side, t);
  return join(dir, name);
}

std::string raw_path(const std::string& dir, char cam, int t) {
  char name[64];
  std::snprintf(name, sizeof name, "%c_%03d.png", cam, t);
  return join(dir, name);
}

}  // namespace bundle

PipelineConfig PipelineConfig::from_doc(const KeyValueDoc& doc, const std::string& base_dir) {
  static const std::set<std::string, std::less<>> known = {
      "scene_dir", "calibration", "raw_dir", "matcher.d_max", "matcher.census_width", "matcher.census_height",
      "matcher.p1", "matcher.p2", "matcher.paths", "matcher.frame_weight", "matcher.bimodal", "matcher.lr_threshold",
      "fusion.tau_var", "fusion.consistency", "fusion.bilateral", "bilateral.window", "bilateral.sigma_color",
      "bilateral.sigma_dist", "warp.material", "eval.mode", "eval.align_space", "eval.kind", "eval.pred", "eval.gt",
      "synth.scene", "synth.spec", "synth.width", "synth.height", "synth.frames", "synth.raw", "seed",
      "serve.root", "serve.host", "serve.port"};
  for (const auto& [key, value] : doc.entries()) {
    if (!known.count(key)) throw ConfigError(doc.source() + ": unknown key '" + key + "'");
  }
  PipelineConfig c;
  try {
    c.scene_dir = resolve(base_dir, doc.get_or("scene_dir", ""));
    c.calibration = resolve(base_dir, doc.get_or("calibration", ""));
    c.raw_dir = resolve(base_dir, doc.get_or("raw_dir", ""));
    c.matcher.d_max = static_cast<int>(doc.get_int_or("matcher.d_max", c.matcher.d_max));
    c.matcher.census.width = static_cast<int>(doc.get_int_or("matcher.census_width", c.matcher.census.width));
    c.matcher.census.height = static_cast<int>(doc.get_int_or("matcher.census_height", c.matcher.census.height));
    if (doc.has("matcher.p1")) c.matcher.p1 = static_cast<float>(doc.get_double("matcher.p1"));
    if (doc.has("matcher.p2")) c.matcher.p2 = static_cast<float>(doc.get_double("matcher.p2"));
    c.matcher.paths = static_cast<int>(doc.get_int_or("matcher.paths", c.matcher.paths));
    c.matcher.frame_weight = doc.get_double_or("matcher.frame_weight", c.matcher.frame_weight);
    c.matcher.select_bimodal_mode = doc.get_bool_or("matcher.bimodal", false);
    c.lr_threshold = doc.get_double_or("matcher.lr_threshold", c.lr_threshold);
    c.tau_var = doc.get_double_or("fusion.tau_var", c.tau_var);
    c.use_consistency = doc.get_bool_or("fusion.consistency", c.use_consistency);
    c.bilateral = doc.get_bool_or("fusion.bilateral", c.bilateral);
    c.bilateral_params.window = static_cast<int>(doc.get_int_or("bilateral.window", c.bilateral_params.window));
    c.bilateral_params.sigma_color = doc.get_double_or("bilateral.sigma_color", c.bilateral_params.sigma_color);
    c.bilateral_params.sigma_dist = doc.get_double_or("bilateral.sigma_dist", c.bilateral_params.sigma_dist);
    c.material = resolve(base_dir, doc.get_or("warp.material", ""));
    const std::string mode = doc.get_or("eval.mode", "full");
    if (mode != "full" && mode != "quarter") throw ConfigError(doc.source() + ": eval.mode must be full or quarter");
    c.eval_mode = mode == "quarter" ? EvalMode::quarter : EvalMode::full;
    const std::string space = doc.get_or("eval.align_space", "depth");
    if (space != "depth" && space != "invdepth") {
      throw ConfigError(doc.source() + ": eval.align_space must be depth or invdepth");
    }
    c.align_space = space == "invdepth" ? AlignSpace::inverse_depth : AlignSpace::depth;
    const std::string kind = doc.get_or("eval.kind", "stereo");
    if (kind != "stereo" && kind != "mono") throw ConfigError(doc.source() + ": eval.kind must be stereo or mono");
    c.eval_mono = kind == "mono";
    c.eval_pred = resolve(base_dir, doc.get_or("eval.pred", ""));
    c.eval_gt = resolve(base_dir, doc.get_or("eval.gt", ""));
    c.synth_kind = doc.get_or("synth.scene", c.synth_kind);
    c.synth_spec = resolve(base_dir, doc.get_or("synth.spec", ""));
    c.synth_width = static_cast<int>(doc.get_int_or("synth.width", c.synth_width));
    c.synth_height = static_cast<int>(doc.get_int_or("synth.height", c.synth_height));
    c.synth_frames = static_cast<int>(doc.get_int_or("synth.frames", c.synth_frames));
    c.synth_raw = doc.get_bool_or("synth.raw", c.synth_raw);
    if (doc.has("seed")) c.seed = doc.get_u64_or("seed", 0);
    c.serve_root = resolve(base_dir, doc.get_or("serve.root", ""));
    c.serve_host = doc.get_or("serve.host", c.serve_host);
    c.serve_port = static_cast<int>(doc.get_int_or("serve.port", c.serve_port));
  } catch (const FormatError& e) {
    throw ConfigError(e.what());
  }
  if (c.serve_port < 0 || c.serve_port > 65535) throw ConfigError(doc.source() + ": serve.port out of range");
  if (c.synth_width < 16 || c.synth_height < 16) throw ConfigError(doc.source() + ": synth size too small");
  try {
    c.matcher.validate();
  } catch (const ArgumentError& e) {
    throw ConfigError(doc.source() + ": " + e.what());
  }
  return c;
}

PipelineConfig PipelineConfig::load(const std::string& path) {
  KeyValueDoc doc;
  try {
    doc = KeyValueDoc::load(path);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return from_doc(doc, fs::path(path).parent_path().string());
}

void cmd_synth(const PipelineConfig& cfg) {
  const std::string& dir = scene_dir(cfg);
  const SyntheticScene scene(synth_spec(cfg));
  const SceneSpec& spec = scene.spec();

  ensure_parent(join(dir, bundle::kScene));
  spec.to_doc().save(join(dir, bundle::kScene));
  save_calibration(spec.calib, join(dir, bundle::kCalibration));
  std::optional<RectifiedSetup> lc;
  if (spec.calib.cam_C) lc = scene.lc();
  save_setups(join(dir, bundle::kRectification), scene.lr(), lc);

  const View left = scene.rectified_view(scene.lr(), true, CameraId::L);
  const View right = scene.rectified_view(scene.lr(), false, CameraId::R);
  for (int t = 0; t < spec.frames; ++t) {
    write_gray(bundle::frame_path(dir, "left", t), scene.render(left, t).image);
    write_gray(bundle::frame_path(dir, "right", t), scene.render(right, t).image);
    if (cfg.synth_raw) {
      const std::string raw = join(dir, "raw");
      write_gray(bundle::raw_path(raw, 'L', t), scene.render(scene.raw_view(CameraId::L), t).image);
      write_gray(bundle::raw_path(raw, 'R', t), scene.render(scene.raw_view(CameraId::R), t).image);
      if (lc) write_gray(bundle::raw_path(raw, 'C', t), scene.render(scene.raw_view(CameraId::C), t).image);
    }
  }

  const SceneGroundTruth gt = scene.ground_truth();
  ensure_parent(join(dir, bundle::kGtDispLeft));
  write_disparity_pfm(join(dir, bundle::kGtDispLeft), gt.disp_left);
  write_disparity_pfm(join(dir, bundle::kGtDispRight), gt.disp_right);
  write_depth_pfm(join(dir, bundle::kGtDepthLeft),
                  disparity_to_depth(gt.disp_left, scene.lr().ref.focal(), scene.lr().baseline));
  write_mask(join(dir, bundle::kGtOcclusion), gt.occlusion_left);
  write_png(join(dir, bundle::kGtMaterial), gt.material_left);

  if (lc) {
    const UnbalancedRender u = scene.render_unbalanced(0);
    write_gray(join(dir, bundle::kLcLeft), u.left);
    write_gray(join(dir, bundle::kLcCenter), u.center);
    write_disparity_pfm(join(dir, bundle::kGtDispLc), u.gt_disp);
    write_png(join(dir, bundle::kGtMaterialLc), u.material);
  }
}

void cmd_rectify(const PipelineConfig& cfg) {
  const std::string& dir = scene_dir(cfg);
  const std::string calib_path = cfg.calibration.empty() ? join(dir, bundle::kCalibration) : cfg.calibration;
  const Calibration calib = load_calibration(require_input(calib_path, "calibration"));
  const std::string raw_root = cfg.raw_dir.empty() ? join(dir, "raw") : cfg.raw_dir;

  const RectifiedSetup lr = rectify_balanced(calib.stereo_LR());
  std::optional<RectifiedSetup> lc;
  if (calib.cam_C) lc = rectify_unbalanced(calib.stereo_LC());

  const WarpField wl = rectification_warp(calib.cam_L, lr.ref);
  const WarpField wr = rectification_warp(calib.cam_R, lr.tgt);
  int frames = 0;
  for (int t = 0;; ++t) {
    const std::string pl = bundle::raw_path(raw_root, 'L', t);
    if (!exists(pl)) break;
    const ImageF l = to_float(read_png8(pl));
    const ImageF r = to_float(read_png8(require_input(bundle::raw_path(raw_root, 'R', t), "raw R frame")));
    if (l.width() != calib.cam_L.width || l.height() != calib.cam_L.height) {
      throw FormatError(pl + ": image size does not match the calibration");
    }
    write_gray(bundle::frame_path(dir, "left", t), warp_image(l, wl, Interp::bilinear));
    write_gray(bundle::frame_path(dir, "right", t), warp_image(r, wr, Interp::bilinear));
    if (lc && t == 0) {
      const ImageF c = to_float(read_png8(require_input(bundle::raw_path(raw_root, 'C', 0), "raw C frame")));
      write_gray(join(dir, bundle::kLcLeft), warp_image(l, rectification_warp(calib.cam_L, lc->ref), Interp::bilinear));
      write_gray(join(dir, bundle::kLcCenter),
                 warp_image(c, rectification_warp(*calib.cam_C, lc->tgt), Interp::bilinear));
    }
    ++frames;
  }
  if (frames == 0) throw IoError(bundle::raw_path(raw_root, 'L', 0) + ": no raw frames found");
  save_setups(join(dir, bundle::kRectification), lr, lc);
}

void cmd_match(const PipelineConfig& cfg) {
  const std::string& dir = scene_dir(cfg);
  const std::vector<ImageF> left = read_frames(dir, "left");
  const std::vector<ImageF> right = read_frames(dir, "right");
  if (left.size() != right.size()) throw IoError(dir + ": left and right frame counts differ");
  for (std::size_t t = 0; t < left.size(); ++t) {
    if (!same_shape(left[t], left[0]) || !same_shape(right[t], left[0])) {
      throw FormatError(bundle::frame_path(dir, "right", static_cast<int>(t)) + ": frame sizes differ");
    }
  }
  if (cfg.matcher.d_max >= left[0].width()) {
    throw ConfigError("matcher.d_max " + std::to_string(cfg.matcher.d_max) + " must be below the image width " +
                      std::to_string(left[0].width()));
  }

  const SpaceTimeResult l = match_spacetime(left, right, cfg.matcher, MatchDirection::left_reference);
  const SpaceTimeResult r = match_spacetime(right, left, cfg.matcher, MatchDirection::right_reference);
  const ConsistencyMasks cons = lr_consistency(l.fused.disparity, r.fused.disparity, cfg.lr_threshold);

  const DisparityMap& d = l.fused.disparity;
  write_disparity_pfm(join(dir, bundle::kDispMean), d);
  write_pfm(join(dir, bundle::kDispVar), to_pfm_image(*d.variance, d.valid));
  write_disparity_pfm(join(dir, bundle::kDispRight), r.fused.disparity);
  write_mask(join(dir, bundle::kConsLeft), cons.left);
  write_mask(join(dir, bundle::kConsRight), cons.right);
}

void cmd_postprocess(const PipelineConfig& cfg) {
  const std::string& dir = scene_dir(cfg);
  const Setups setups = load_setups(join(dir, bundle::kRectification));
  FusedDisparity fused;
  fused.disparity = read_disparity_pfm(require_input(join(dir, bundle::kDispMean), "fused disparity"));
  const DisparityMap var = read_disparity_pfm(require_input(join(dir, bundle::kDispVar), "fused variance"));
  check_size(var, fused.disparity.width(), fused.disparity.height(), join(dir, bundle::kDispVar));
  fused.disparity.variance = var.values;

  DisparityMap d = restrict_to(fused.disparity, variance_filter(fused, cfg.tau_var));
  if (cfg.use_consistency) d = restrict_to(d, read_mask(require_input(in_scene(cfg, bundle::kConsLeft), "mask")));
  const std::string manual = in_scene(cfg, bundle::kManualMask);
  if (exists(manual)) d = apply_manual_mask(d, decode_rle(read_file(manual), manual));

  const Image<std::uint8_t> guide8 = read_png8(bundle::frame_path(dir, "left", 0));
  if (cfg.bilateral) d = bilateral_smooth(d, to_float(guide8), cfg.bilateral_params);
  check_size(d, setups.lr.ref.width, setups.lr.ref.height, join(dir, bundle::kDispMean));

  write_disparity_pfm(join(dir, bundle::kLabels), d);
  write_mask(join(dir, bundle::kKeepMask), d.valid);
  const PointCloud cloud = export_point_cloud(d, gray_to_rgb(guide8), setups.lr.ref.camera(), setups.lr.baseline);
  write_file(join(dir, bundle::kCloud), encode_cloud_records(cloud));
  write_file(join(dir, bundle::kPly), encode_ply(cloud));
}

void cmd_warp(const PipelineConfig& cfg) {
  const std::string& dir = scene_dir(cfg);
  const Setups setups = load_setups(join(dir, bundle::kRectification));
  if (!setups.lc) throw ConfigError(join(dir, bundle::kRectification) + ": scene has no L-C rectification");
  const DisparityMap d = read_disparity_pfm(require_input(join(dir, bundle::kLabels), "labels"));
  write_disparity_pfm(join(dir, bundle::kLabelsLc), warp_disparity_lr_to_lc(d, setups.lr, *setups.lc));
  const std::string material = cfg.material.empty() ? join(dir, bundle::kGtMaterial) : cfg.material;
  if (!cfg.material.empty() || exists(material)) {
    const MaterialMask m = read_material(require_input(material, "material mask"));
    if (m.width() != setups.lr.ref.width || m.height() != setups.lr.ref.height) {
      throw FormatError(material + ": material mask size differs from the L-R reference view");
    }
    write_png(join(dir, bundle::kMaterialLc), warp_mask_lr_to_lc(m, setups.lr, *setups.lc));
  }
}

std::string cmd_eval(const PipelineConfig& cfg) {
  const std::string& dir = scene_dir(cfg);
  if (cfg.eval_mono) {
    if (cfg.eval_pred.empty()) throw ConfigError("mono evaluation needs eval.pred");
    const DepthMap pred_in = read_depth_pfm(require_input(cfg.eval_pred, "prediction"));
    const std::string gt_path = cfg.eval_gt.empty() ? join(dir, bundle::kGtDepthLeft) : cfg.eval_gt;
    const DepthMap gt_in = read_depth_pfm(require_input(gt_path, "ground truth"));
    auto [pred, gt] = prepare_resolutions(pred_in, gt_in, cfg.eval_mode);
    std::optional<Mask> material;
    const std::string mp = join(dir, bundle::kGtMaterial);
    if (exists(mp)) material = resample_mask(read_material(mp), gt.width(), gt.height());
    const EvalReport rep =
        stratify_mono(pred, gt, build_strata(nullptr, material ? &*material : nullptr), cfg.align_space);
    write_file(join(dir, bundle::kReport), rep.to_text());
    return rep.to_table();
  }

  const std::string pred_path = cfg.eval_pred.empty() ? join(dir, bundle::kLabels) : cfg.eval_pred;
  const std::string gt_path = cfg.eval_gt.empty() ? join(dir, bundle::kGtDispLeft) : cfg.eval_gt;
  const DisparityMap pred = read_disparity_pfm(require_input(pred_path, "prediction"));
  const DisparityMap gt = read_disparity_pfm(require_input(gt_path, "ground truth"));
  std::string table = eval_disparity(pred, gt, join(dir, bundle::kConsLeft), join(dir, bundle::kGtMaterial),
                                     cfg.eval_mode, join(dir, bundle::kReport));

  // The L-C labels are scored as well when the default bundle has them.
  const std::string pred_lc = join(dir, bundle::kLabelsLc), gt_lc = join(dir, bundle::kGtDispLc);
  if (cfg.eval_pred.empty() && cfg.eval_gt.empty() && exists(pred_lc) && exists(gt_lc)) {
    const DisparityMap g = read_disparity_pfm(gt_lc);
    if (cfg.eval_mode == EvalMode::quarter && (g.width() % 4 != 0 || g.height() % 4 != 0)) return table;
    table += "\nL-C\n";
    table += eval_disparity(read_disparity_pfm(pred_lc), g, "",
                            join(dir, bundle::kGtMaterialLc), cfg.eval_mode, join(dir, bundle::kReportLc));
  }
  return table;
}

}  // namespace stereogt::app
