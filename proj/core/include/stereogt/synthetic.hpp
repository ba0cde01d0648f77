#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "stereogt/calibration_io.hpp"
#include "stereogt/image.hpp"
#include "stereogt/kv_text.hpp"
#include "stereogt/postprocess.hpp"
#include "stereogt/rectification.hpp"

namespace stereogt {

/// Textured parallelogram origin + s*edge_u + t*edge_v, s, t in [0, 1].
struct PlaneSurface {
  Eigen::Vector3d origin = Eigen::Vector3d::Zero();
  Eigen::Vector3d edge_u = Eigen::Vector3d::UnitX();
  Eigen::Vector3d edge_v = Eigen::Vector3d::UnitY();
  std::uint64_t seed = 1;
  double texel = 0.005;  ///< albedo noise cell, meters
  double contrast = 0.5;
};

/// Axis-aligned textured box in the L camera frame.
struct BoxSurface {
  Eigen::Vector3d lo = Eigen::Vector3d::Zero();
  Eigen::Vector3d hi = Eigen::Vector3d::Ones();
  std::uint64_t seed = 1;
  double texel = 0.005;
  double contrast = 0.5;
};

/// Half-open pixel rectangle [x0, x1) x [y0, y1) of the rectified L image of
/// the L-R rig. Surface points seen there get material class `cls`:
/// 1 lowers texture contrast, 2 blends the other views with unrelated
/// texture, 3 replaces it entirely (fresh every frame).
struct AmbiguousRegion {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  int cls = 3;
};

/// World coordinates are the raw L camera frame.
struct SceneSpec {
  Calibration calib;
  std::vector<PlaneSurface> planes;
  std::vector<BoxSurface> boxes;
  std::vector<AmbiguousRegion> regions;
  int frames = 8;
  double noise_sigma = 2.0;  ///< additive Gaussian, gray levels
  std::uint64_t seed = 1;
  Eigen::Vector3d projector = Eigen::Vector3d(0.03, -0.05, 0.0);
  double pattern_cell = 0.006;     ///< projector noise cell, radians
  double pattern_strength = 0.6;   ///< 0 disables the projected pattern
  int supersample = 2;

  /// Throws ArgumentError on bad counts or surfaces behind a camera.
  void validate() const;
  [[nodiscard]] KeyValueDoc to_doc() const;
  static SceneSpec from_doc(const KeyValueDoc& doc);
};

enum class CameraId { L = 0, R = 1, C = 2 };

/// A virtual camera: x ~ K * undistort^-1(R * (X - center)).
struct View {
  Eigen::Matrix3d K = Eigen::Matrix3d::Identity();
  Eigen::Matrix3d R = Eigen::Matrix3d::Identity();
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  Distortion dist;
  int width = 0;
  int height = 0;
  CameraId camera = CameraId::L;
  bool rectified = false;
};

struct ViewRender {
  ImageF image;
  Image<double> depth;    ///< z along the view axis; NaN where nothing is hit
  MaterialMask material;  ///< class of the surface point seen at each pixel
};

struct SceneGroundTruth {
  DisparityMap disp_left;
  DisparityMap disp_right;
  Mask occlusion_left;   ///< 1 where the left pixel is hidden from or outside the right view
  Mask occlusion_right;
  MaterialMask material_left;
};

struct RenderedScene {
  RectifiedSetup setup;
  ImageF left;
  ImageF right;
  SceneGroundTruth gt;
};

struct UnbalancedRender {
  RectifiedSetup setup;
  ImageF left;   ///< rectified L of the L-C rig
  ImageF center; ///< rectified C at its own resolution
  DisparityMap gt_disp;
  MaterialMask material;
};

/// Ray caster over a SceneSpec with precomputed rectification.
class SyntheticScene {
 public:
  explicit SyntheticScene(SceneSpec spec);

  [[nodiscard]] const SceneSpec& spec() const noexcept { return spec_; }
  [[nodiscard]] const RectifiedSetup& lr() const noexcept { return lr_; }
  /// Throws ArgumentError when the scene has no C camera.
  [[nodiscard]] const RectifiedSetup& lc() const;

  [[nodiscard]] View raw_view(CameraId cam) const;
  [[nodiscard]] View rectified_view(const RectifiedSetup& setup, bool reference, CameraId cam) const;

  /// Renders one frame. Views other than L carry the region corruption.
  [[nodiscard]] ViewRender render(const View& view, int frame) const;
  /// Depth and material only (no shading, no noise).
  [[nodiscard]] ViewRender render_geometry(const View& view) const;

  /// Nearest hit along origin + t*dir for t > 0. Returns false on a miss.
  bool cast(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir, double& t) const;

  [[nodiscard]] SceneGroundTruth ground_truth() const;
  [[nodiscard]] RenderedScene render_scene(int frame) const;
  [[nodiscard]] UnbalancedRender render_unbalanced(int frame) const;

 private:
  struct Hit;
  bool intersect(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir, Hit& hit) const;
  [[nodiscard]] int region_class(const Eigen::Vector3d& world) const;
  [[nodiscard]] double shade(const Hit& hit, const Eigen::Vector3d& world, int cls, const View& view, double px,
                             double py, int frame) const;

  SceneSpec spec_;
  RectifiedSetup lr_;
  std::optional<RectifiedSetup> lc_;
};

RenderedScene render_scene(const SceneSpec& spec, int frame);
UnbalancedRender render_unbalanced(const SceneSpec& spec, int frame);

/// Ideal rectified rig looking down +z: equal cameras, pure x baseline.
Calibration ideal_rig(int width, int height, double focal, double baseline);

/// One textured plane filling the view: depth z0 at the image center,
/// tilted by `slope_x` and `slope_y` (dz per meter of x and y).
SceneSpec plane_scene(const Calibration& calib, double z0, double slope_x, double slope_y, std::uint64_t seed);

/// Slanted back wall, a box in front of it, and one region of each class;
/// includes a lower-resolution C camera with a narrower field of view.
SceneSpec desk_scene(std::uint64_t seed, int width = 320, int height = 240);

}  // namespace stereogt
