#pragma once

#include <optional>
#include <string>

#include "stereogt/camera.hpp"
#include "stereogt/kv_text.hpp"
#include "stereogt/rectification.hpp"

namespace stereogt {

/// Three-camera rig: L is the shared reference, R forms the balanced pair
/// and the optional C camera the unbalanced one.
struct Calibration {
  PinholeCamera cam_L;
  PinholeCamera cam_R;
  std::optional<PinholeCamera> cam_C;
  RigidTransform rig_LR;
  std::optional<RigidTransform> rig_LC;

  [[nodiscard]] StereoRig stereo_LR() const { return {cam_L, cam_R, rig_LR}; }
  /// Throws ArgumentError when C is absent.
  [[nodiscard]] StereoRig stereo_LC() const;
};

/// Reads `camX.*` and `rig_XY.*` keys. Keys under `rect.` are tolerated and
/// ignored; any other unknown key is rejected.
Calibration calibration_from_doc(const KeyValueDoc& doc);
void calibration_to_doc(const Calibration& calib, KeyValueDoc& doc);

Calibration load_calibration(const std::string& path);
void save_calibration(const Calibration& calib, const std::string& path);

/// Adds `rect.<name>.*` keys describing a rectified setup.
void rectified_setup_to_doc(const RectifiedSetup& setup, const std::string& name, KeyValueDoc& doc);
RectifiedSetup rectified_setup_from_doc(const KeyValueDoc& doc, const std::string& name);

}  // namespace stereogt
