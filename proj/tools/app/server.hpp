#pragma once

#include <memory>
#include <string>
#include <vector>

namespace stereogt::app {

/// Local cleaning service over a directory of scene bundles. A bundle is any
/// directory holding cloud.bin; the root itself counts when it is one.
///
///   GET  /scenes             one "id=... width=... height=... points=... masked=0|1" line per scene
///   GET  /scene/{id}/cloud   27-byte point records
///   GET  /scene/{id}/image   left reference frame, PNG
///   POST /scene/{id}/mask    RLE removal mask, stored as manual_mask.rle
class SceneServer {
 public:
  explicit SceneServer(std::string root);
  ~SceneServer();
  SceneServer(const SceneServer&) = delete;
  SceneServer& operator=(const SceneServer&) = delete;

  /// Port 0 picks a free port. Returns the bound port, throws IoError on failure.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  void run();
  void stop();
  void wait_until_ready() const;

  [[nodiscard]] std::vector<std::string> scene_ids() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace stereogt::app
