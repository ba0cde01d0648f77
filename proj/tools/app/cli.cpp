#include "cli.hpp"

#include <csignal>
#include <ostream>

#include <CLI11.hpp>

#include "pipeline.hpp"
#include "server.hpp"

namespace stereogt::app {

namespace {

SceneServer* g_server = nullptr;

extern "C" void on_signal(int) {
  if (g_server) g_server->stop();
}

int serve(const PipelineConfig& cfg, std::ostream& out) {
  const std::string root = cfg.serve_root.empty() ? cfg.scene_dir : cfg.serve_root;
  if (root.empty()) throw ConfigError("serve needs --out or serve.root");
  SceneServer server(root);
  const int port = server.bind(cfg.serve_host, cfg.serve_port);
  out << "serving " << server.scene_ids().size() << " scene(s) on http://" << cfg.serve_host << ":" << port
      << std::endl;
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  server.run();
  g_server = nullptr;
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stereo ground-truth annotation pipeline", "stereogt"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_dir, align_space;
  std::uint64_t seed = 0;
  bool quarter = false;
  app.add_option("--config", config_path, "pipeline configuration file");
  app.add_option("--out", out_dir, "scene bundle directory");
  auto* seed_opt = app.add_option("--seed", seed, "scene seed (synth)");
  app.add_flag("--quarter", quarter, "evaluate at quarter resolution");
  app.add_option("--align-space", align_space, "mono alignment space")->check(CLI::IsMember({"depth", "invdepth"}));

  const char* names[] = {"rectify", "match", "postprocess", "warp", "eval", "synth", "serve"};
  const char* help[] = {"rectify raw frames", "space-time matching", "filter, clean and smooth labels",
                        "warp labels to the L-C rig", "write the evaluation report",
                        "render a synthetic scene bundle", "start the cleaning service"};
  for (int i = 0; i < 7; ++i) app.add_subcommand(names[i], help[i]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "stereogt: " << e.what() << "\n";
    return 1;
  }

  try {
    PipelineConfig cfg = config_path.empty() ? PipelineConfig{} : PipelineConfig::load(config_path);
    if (!out_dir.empty()) cfg.scene_dir = out_dir;
    if (*seed_opt) cfg.seed = seed;
    if (quarter) cfg.eval_mode = EvalMode::quarter;
    if (!align_space.empty()) cfg.align_space = align_space == "invdepth" ? AlignSpace::inverse_depth : AlignSpace::depth;

    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "synth") cmd_synth(cfg);
    else if (cmd == "rectify") cmd_rectify(cfg);
    else if (cmd == "match") cmd_match(cfg);
    else if (cmd == "postprocess") cmd_postprocess(cfg);
    else if (cmd == "warp") cmd_warp(cfg);
    else if (cmd == "eval") out << cmd_eval(cfg);
    else return serve(cfg, out);
    return 0;
  } catch (const ConfigError& e) {
    err << "stereogt: config error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    err << "stereogt: " << e.what() << "\n";
    return 2;
  } catch (const FormatError& e) {
    err << "stereogt: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "stereogt: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace stereogt::app
