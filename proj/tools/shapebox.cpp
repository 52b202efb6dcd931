// shapebox: batch front end for shape-inversion Mandelbox scenes.
//
//   render <scene> -o <out.png> [--threads N] [--tile-size N] [--print-config]
//   probe <scene> --point x,y[,z[,w]] [--max-iter N] [--json]
//   presets list | presets export <name> [-o file]
//   serve [--port P] [--bind ADDR]
//
// Exit codes: 0 ok, 2 parse error, 3 validation error, 4 render error, 5 I/O error.

#include <CLI11.hpp>

#include <csignal>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "shapebox/job.hpp"
#include "shapebox/presets.hpp"
#include "shapebox/probe.hpp"
#include "shapebox/service.hpp"

namespace {

using namespace shapebox;

enum Exit : int { kOk = 0, kParse = 2, kValidation = 3, kRender = 4, kIo = 5 };

SceneConfig load_scene(const std::string& path) {
  const auto bytes = read_file(path);
  try {
    return parse_scene(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  } catch (const SceneError& e) {
    throw SceneError(e.kind(), e.path(), e.message() + " (in " + path + ")");
  }
}

int scene_exit(const SceneError& e) { return e.kind() == SceneError::Kind::kParse ? kParse : kValidation; }

struct RenderArgs {
  std::string scene;
  std::string output;
  std::optional<int> threads;
  std::optional<int> tile_size;
  std::optional<double> fudge;
  std::optional<int> max_iter;
  bool supersample = false;
  bool print_config = false;
};

int cmd_render(const RenderArgs& a) {
  SceneConfig scene;
  nlohmann::json overrides = nlohmann::json::object();
  try {
    scene = load_scene(a.scene);
    if (a.tile_size) {
      scene.tile_size = *a.tile_size;
      overrides["tile_size"] = *a.tile_size;
    }
    if (a.fudge) {
      scene.tuning.fudge = *a.fudge;
      overrides["fudge"] = *a.fudge;
    }
    if (a.max_iter) {
      scene.iteration.max_iterations = *a.max_iter;
      overrides["max_iterations"] = *a.max_iter;
    }
    if (a.supersample) {
      scene.tuning.supersample = true;
      overrides["supersample"] = true;
    }
    if (a.threads) overrides["threads"] = *a.threads;
    validate_scene(scene);
  } catch (const SceneError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return scene_exit(e);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }

  for (const auto& w : nesting_warnings(scene.iteration)) std::cerr << "warning: " << w << "\n";

  if (a.print_config) {
    std::cout << dump_scene(scene) << "\n";
    return kOk;
  }
  if (a.output.empty()) {
    std::cerr << "error: render needs -o <out.png>\n";
    return kIo;
  }

  const std::size_t threads = effective_threads(scene, a.threads);
  RenderJobResult result;
  try {
    WorkerPool pool(threads);
    result = run_render_job(scene, pool);
  } catch (const std::exception& e) {
    std::cerr << "error: render failed: " << e.what() << "\n";
    return kRender;
  }

  try {
    write_file(a.output, result.png);
    std::filesystem::path meta = a.output;
    meta.replace_extension(".meta.json");
    const std::string text = render_metadata(scene, result, threads, overrides).dump(2) + "\n";
    write_file(meta, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }
  return kOk;
}

int cmd_probe(const std::string& path, const std::string& point, std::optional<int> max_iter, bool as_json) {
  try {
    const SceneConfig scene = load_scene(path);
    const ProbeReport report = probe(scene, parse_point(point), max_iter);
    if (as_json) {
      std::cout << probe_to_json(report).dump(2) << "\n";
    } else {
      std::cout << probe_to_text(report);
    }
    return kOk;
  } catch (const SceneError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return scene_exit(e);
  } catch (const ProbeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }
}

int cmd_presets_list() {
  std::size_t width = 0;
  for (const auto& p : presets()) width = std::max(width, p.name.size());
  for (const auto& p : presets()) {
    std::cout << p.name << std::string(width + 2 - p.name.size(), ' ') << p.description << "\n";
  }
  return kOk;
}

int cmd_presets_export(const std::string& name, const std::string& output) {
  const Preset* p = find_preset(name);
  if (!p) {
    std::cerr << "error: unknown preset '" << name << "' (see `shapebox presets list`)\n";
    return kValidation;
  }
  const std::string text = dump_scene(p->scene) + "\n";
  if (output.empty()) {
    std::cout << text;
    return kOk;
  }
  try {
    write_file(output, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }
  return kOk;
}

RenderService* g_service = nullptr;

int cmd_serve(ServiceConfig config) {
  try {
    RenderService service(config);
    const int port = service.bind();
    g_service = &service;
    std::signal(SIGINT, [](int) {
      if (g_service) g_service->stop();
    });
    std::signal(SIGTERM, [](int) {
      if (g_service) g_service->stop();
    });
    std::cerr << "shapebox " << version() << " serving on http://" << config.bind_address << ":" << port << "\n";
    service.listen();
    g_service = nullptr;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shape-inversion Mandelbox renderer"};
  app.require_subcommand(1);
  app.set_version_flag("--version", shapebox::version());

  RenderArgs render;
  auto* r = app.add_subcommand("render", "Render a scene to PNG plus a .meta.json sidecar");
  r->add_option("scene", render.scene, "Scene document")->required();
  r->add_option("-o,--output", render.output, "Output PNG path");
  r->add_option("--threads", render.threads, "Worker threads (overrides scene and SHAPEBOX_THREADS)")
      ->check(CLI::PositiveNumber);
  r->add_option("--tile-size", render.tile_size, "Tile edge in pixels")->check(CLI::PositiveNumber);
  r->add_option("--fudge", render.fudge, "Distance-estimate fudge factor in (0, 1]");
  r->add_option("--max-iter", render.max_iter, "Override the iteration cap")->check(CLI::PositiveNumber);
  r->add_flag("--supersample", render.supersample, "2x2 supersampling");
  r->add_flag("--print-config", render.print_config, "Print the effective scene and exit");

  std::string probe_scene, probe_point;
  std::optional<int> probe_iter;
  bool probe_json = false;
  auto* p = app.add_subcommand("probe", "Print the stage-by-stage orbit of one point");
  p->add_option("scene", probe_scene, "Scene document")->required();
  p->add_option("--point", probe_point, "Seed point x,y[,z[,w]]")->required();
  p->add_option("--max-iter", probe_iter, "Override the iteration cap")->check(CLI::PositiveNumber);
  p->add_flag("--json", probe_json, "Emit the whole report as JSON");

  std::string export_name, export_out;
  auto* ps = app.add_subcommand("presets", "List or export built-in scenes");
  ps->require_subcommand(1);
  auto* ps_list = ps->add_subcommand("list", "List preset names");
  auto* ps_export = ps->add_subcommand("export", "Write a preset scene document");
  ps_export->add_option("name", export_name, "Preset name")->required();
  ps_export->add_option("-o,--output", export_out, "Output path (default stdout)");

  shapebox::ServiceConfig serve;
  auto* s = app.add_subcommand("serve", "Run the HTTP render service");
  s->add_option("--port", serve.port, "Listen port (0 = any free port)");
  s->add_option("--bind", serve.bind_address, "Bind address");
  s->add_option("--threads", serve.threads, "Render worker threads");
  s->add_option("--max-jobs", serve.max_jobs, "Simultaneous render jobs");
  s->add_option("--max-pixels", serve.max_pixels, "Per-request image area cap");

  CLI11_PARSE(app, argc, argv);

  if (r->parsed()) return cmd_render(render);
  if (p->parsed()) return cmd_probe(probe_scene, probe_point, probe_iter, probe_json);
  if (ps_list->parsed()) return cmd_presets_list();
  if (ps_export->parsed()) return cmd_presets_export(export_name, export_out);
  if (s->parsed()) return cmd_serve(serve);
  return 1;
}
