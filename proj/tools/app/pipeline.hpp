#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "stereogt/errors.hpp"
#include "stereogt/kv_text.hpp"
#include "stereogt/metrics.hpp"
#include "stereogt/postprocess.hpp"
#include "stereogt/report.hpp"
#include "stereogt/spacetime.hpp"

namespace stereogt::app {

/// Bad command line or pipeline configuration. Maps to exit code 1.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Everything a command needs. Relative paths in a config file are resolved
/// against the directory of that file.
struct PipelineConfig {
  std::string scene_dir;  ///< bundle directory, read and written by every command

  // rectify
  std::string calibration;  ///< defaults to <scene>/calibration.txt
  std::string raw_dir;      ///< holds L_000.png, R_000.png, ...; defaults to <scene>/raw

  MatcherParams matcher;
  double lr_threshold = 2.0;

  // postprocess
  double tau_var = 1.0;
  bool use_consistency = true;
  bool bilateral = true;
  BilateralParams bilateral_params;

  // warp
  std::string material;  ///< L-R material mask; defaults to <scene>/gt/material_left.png

  // eval
  EvalMode eval_mode = EvalMode::full;
  AlignSpace align_space = AlignSpace::depth;
  bool eval_mono = false;
  std::string eval_pred;
  std::string eval_gt;

  // synth
  std::string synth_kind = "desk";  ///< desk | plane
  std::string synth_spec;           ///< SceneSpec file, overrides synth_kind
  int synth_width = 320;
  int synth_height = 240;
  int synth_frames = 0;  ///< 0 keeps the scene's own count
  bool synth_raw = true;
  std::optional<std::uint64_t> seed;

  // serve
  std::string serve_root;  ///< defaults to the scene directory
  std::string serve_host = "127.0.0.1";
  int serve_port = 8765;

  /// Throws ConfigError on unknown keys or bad values.
  static PipelineConfig from_doc(const KeyValueDoc& doc, const std::string& base_dir);
  static PipelineConfig load(const std::string& path);
};

// Bundle layout, relative to the scene directory.
namespace bundle {
inline constexpr const char* kScene = "scene.txt";
inline constexpr const char* kCalibration = "calibration.txt";
inline constexpr const char* kRectification = "rectification.txt";
inline constexpr const char* kGtDispLeft = "gt/disp_left.pfm";
inline constexpr const char* kGtDispRight = "gt/disp_right.pfm";
inline constexpr const char* kGtDepthLeft = "gt/depth_left.pfm";
inline constexpr const char* kGtOcclusion = "gt/occlusion_left.png";
inline constexpr const char* kGtMaterial = "gt/material_left.png";
inline constexpr const char* kGtDispLc = "gt/disp_lc.pfm";
inline constexpr const char* kGtMaterialLc = "gt/material_lc.png";
inline constexpr const char* kLcLeft = "frames/lc_left.png";
inline constexpr const char* kLcCenter = "frames/lc_center.png";
inline constexpr const char* kDispMean = "disp_mean.pfm";
inline constexpr const char* kDispVar = "disp_var.pfm";
inline constexpr const char* kDispRight = "disp_right.pfm";
inline constexpr const char* kConsLeft = "consistency_left.png";
inline constexpr const char* kConsRight = "consistency_right.png";
inline constexpr const char* kManualMask = "manual_mask.rle";
inline constexpr const char* kLabels = "labels.pfm";
inline constexpr const char* kKeepMask = "keep_mask.png";
inline constexpr const char* kCloud = "cloud.bin";
inline constexpr const char* kPly = "cloud.ply";
inline constexpr const char* kLabelsLc = "labels_lc.pfm";
inline constexpr const char* kMaterialLc = "material_lc.png";
inline constexpr const char* kReport = "report.txt";
inline constexpr const char* kReportLc = "report_lc.txt";

std::string frame_path(const std::string& dir, const char* side, int t);
/// Raw frame inside a raw directory, e.g. <raw>/L_000.png.
std::string raw_path(const std::string& raw_dir, char cam, int t);
}  // namespace bundle

void cmd_synth(const PipelineConfig& cfg);
void cmd_rectify(const PipelineConfig& cfg);
void cmd_match(const PipelineConfig& cfg);
void cmd_postprocess(const PipelineConfig& cfg);
void cmd_warp(const PipelineConfig& cfg);
/// Writes the report(s) and returns the table text for stdout.
std::string cmd_eval(const PipelineConfig& cfg);

}  // namespace stereogt::app
