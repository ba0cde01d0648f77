#include "server.hpp"

#include <filesystem>
#include <map>
#include <mutex>

#include "pipeline.hpp"
#include "stereogt/errors.hpp"
#include "stereogt/file_io.hpp"
#include "stereogt/io_pfm.hpp"
#include "stereogt/point_cloud.hpp"
#include "stereogt/rle_mask.hpp"

// After Eigen: resolv.h defines _res, which Eigen uses as a parameter name.
#include <httplib.h>

namespace fs = std::filesystem;

namespace stereogt::app {

struct SceneServer::Impl {
  fs::path root;
  httplib::Server http;
  std::mutex table_mutex;
  std::map<std::string, std::unique_ptr<std::mutex>> scene_mutex;

  std::mutex& lock_for(const std::string& id) {
    std::lock_guard<std::mutex> g(table_mutex);
    auto& m = scene_mutex[id];
    if (!m) m = std::make_unique<std::mutex>();
    return *m;
  }

  std::map<std::string, fs::path> scenes() const {
    std::map<std::string, fs::path> out;
    auto is_bundle = [](const fs::path& p) { return fs::is_regular_file(p / bundle::kCloud); };
    std::error_code ec;
    if (is_bundle(root)) out[fs::absolute(root).lexically_normal().filename().string()] = root;
    for (const auto& e : fs::directory_iterator(root, ec)) {
      if (e.is_directory() && is_bundle(e.path())) out[e.path().filename().string()] = e.path();
    }
    return out;
  }

  // Size of the labelled view, read from the labels header.
  static std::pair<int, int> labels_size(const fs::path& dir) {
    const ImageF img = read_pfm((dir / bundle::kLabels).string());
    return {img.width(), img.height()};
  }

  void routes() {
    http.Get("/scenes", [this](const httplib::Request&, httplib::Response& res) {
      std::string body;
      for (const auto& [id, dir] : scenes()) {
        const auto [w, h] = labels_size(dir);
        const auto points = fs::file_size(dir / bundle::kCloud) / kCloudRecordSize;
        body += "id=" + id + " width=" + std::to_string(w) + " height=" + std::to_string(h) +
                " points=" + std::to_string(points) +
                " masked=" + (fs::exists(dir / bundle::kManualMask) ? "1" : "0") + "\n";
      }
      res.set_content(body, "text/plain");
    });

    http.Get(R"(/scene/([^/]+)/cloud)", [this](const httplib::Request& req, httplib::Response& res) {
      serve_file(req.matches[1], bundle::kCloud, "application/octet-stream", res);
    });
    http.Get(R"(/scene/([^/]+)/image)", [this](const httplib::Request& req, httplib::Response& res) {
      serve_file(req.matches[1], "frames/left_000.png", "image/png", res);
    });

    http.Post(R"(/scene/([^/]+)/mask)", [this](const httplib::Request& req, httplib::Response& res) {
      const auto all = scenes();
      const auto it = all.find(req.matches[1]);
      if (it == all.end()) return fail(res, 404, "unknown scene");
      std::lock_guard<std::mutex> g(lock_for(it->first));
      Mask mask;
      try {
        mask = decode_rle(req.body, "request body");
      } catch (const FormatError& e) {
        return fail(res, 400, e.what());
      }
      const auto [w, h] = labels_size(it->second);
      if (mask.width() != w || mask.height() != h) {
        return fail(res, 400, "mask is " + std::to_string(mask.width()) + "x" + std::to_string(mask.height()) +
                                  ", scene is " + std::to_string(w) + "x" + std::to_string(h));
      }
      write_file((it->second / bundle::kManualMask).string(), encode_rle(mask));
      std::size_t removed = 0;
      for (auto v : mask.pixels()) removed += v != 0;
      res.set_content("ok removed=" + std::to_string(removed) + "\n", "text/plain");
    });

    http.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
      try {
        std::rethrow_exception(ep);
      } catch (const std::exception& e) {
        fail(res, 500, e.what());
      }
    });
  }

  void serve_file(const std::string& id, const char* rel, const char* type, httplib::Response& res) {
    const auto all = scenes();
    const auto it = all.find(id);
    if (it == all.end()) return fail(res, 404, "unknown scene");
    const fs::path p = it->second / rel;
    if (!fs::exists(p)) return fail(res, 404, std::string("scene has no ") + rel);
    res.set_content(read_file(p.string()), type);
  }

  static void fail(httplib::Response& res, int status, const std::string& msg) {
    res.status = status;
    res.set_content("error " + msg + "\n", "text/plain");
  }
};

SceneServer::SceneServer(std::string root) : impl_(std::make_unique<Impl>()) {
  impl_->root = fs::path(std::move(root));
  if (!fs::is_directory(impl_->root)) throw IoError(impl_->root.string() + ": not a directory");
  impl_->routes();
}

SceneServer::~SceneServer() { stop(); }

int SceneServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int p = impl_->http.bind_to_any_port(host);
    if (p < 0) throw IoError(host + ": cannot bind");
    return p;
  }
  if (!impl_->http.bind_to_port(host, port)) throw IoError(host + ":" + std::to_string(port) + ": cannot bind");
  return port;
}

void SceneServer::run() { impl_->http.listen_after_bind(); }

void SceneServer::stop() {
  if (impl_ && impl_->http.is_running()) impl_->http.stop();
}

void SceneServer::wait_until_ready() const { impl_->http.wait_until_ready(); }

std::vector<std::string> SceneServer::scene_ids() const {
  std::vector<std::string> ids;
  for (const auto& [id, dir] : impl_->scenes()) ids.push_back(id);
  return ids;
}

}  // namespace stereogt::app
