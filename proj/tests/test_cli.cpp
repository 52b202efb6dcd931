#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "shapebox/presets.hpp"
#include "shapebox/render.hpp"

using namespace shapebox;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
};

// Runs the CLI with stderr folded into the captured output.
Run cli(const std::string& args) {
  const std::string cmd = std::string(SHAPEBOX_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("shapebox-cli-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string small(const char* preset, int size) {
  SceneConfig s = find_preset(preset)->scene;
  s.width = s.height = size;
  return dump_scene(s);
}

}  // namespace

TEST_CASE("presets list and export") {
  const Run list = cli("presets list");
  CHECK(list.status == 0);
  for (const auto& p : presets()) CHECK(list.out.find(p.name) != std::string::npos);

  const fs::path out = scratch() / "square2d.json";
  CHECK(cli("presets export square2d -o " + out.string()).status == 0);
  CHECK(parse_scene(slurp(out)) == find_preset("square2d")->scene);

  const Run piped = cli("presets export classic2d");
  CHECK(parse_scene(piped.out) == find_preset("classic2d")->scene);

  const Run unknown = cli("presets export nope");
  CHECK(unknown.status == 3);
  CHECK(unknown.out.find("nope") != std::string::npos);
}

TEST_CASE("render writes a PNG and a metadata sidecar") {
  const fs::path scene = write("classic.json", small("classic2d", 48));
  const fs::path png = scratch() / "classic.png";
  const Run r = cli("render " + scene.string() + " -o " + png.string() + " --threads 3 --max-iter 40");
  REQUIRE(r.status == 0);
  const auto bytes = read_file(png);
  const Image img = decode_png(bytes);
  CHECK(img.width == 48);

  const json meta = json::parse(slurp(scratch() / "classic.meta.json"));
  CHECK(meta["threads"] == 3);
  CHECK(meta["overrides"]["max_iterations"] == 40);
  CHECK(meta["overrides"]["threads"] == 3);
  CHECK(meta["image"]["width"] == 48);

  SceneConfig expected = parse_scene(slurp(scene));
  expected.iteration.max_iterations = 40;
  CHECK(meta["scene_hash"] == scene_hash(expected));
  CHECK(img == render_reference(expected).image);
}

TEST_CASE("print-config echoes the effective scene without rendering") {
  const fs::path scene = write("print.json", small("julibox2d", 32));
  const fs::path png = scratch() / "print.png";
  const Run r = cli("render " + scene.string() + " -o " + png.string() + " --print-config --tile-size 8");
  CHECK(r.status == 0);
  SceneConfig expected = parse_scene(slurp(scene));
  expected.tile_size = 8;
  CHECK(parse_scene(r.out) == expected);
  CHECK_FALSE(fs::exists(png));
}

TEST_CASE("exit codes") {
  const Run missing = cli("render /nonexistent/scene.json -o x.png");
  CHECK(missing.status == 5);
  CHECK(missing.out.find("/nonexistent/scene.json") != std::string::npos);

  CHECK(cli("render " + write("broken.json", "{\"schema_version\": 1,").string() + " -o x.png").status == 2);

  json bad = json::parse(small("classic2d", 16));
  bad["iteration"]["outer_shape"]["radius"] = -1;
  const Run invalid = cli("render " + write("invalid.json", bad.dump()).string() + " -o x.png");
  CHECK(invalid.status == 3);
  CHECK(invalid.out.find("iteration.outer_shape.radius") != std::string::npos);

  const fs::path ok = write("ok.json", small("classic2d", 16));
  CHECK(cli("render " + ok.string() + " -o /nonexistent/dir/out.png").status == 5);
  CHECK(cli("probe " + ok.string() + " --point 1,2,3").status == 3);
}

TEST_CASE("probe output") {
  const fs::path scene = write("probe.json", small("classic2d", 16));
  const Run zero = cli("probe " + scene.string() + " --point 0,0 --max-iter 2");
  REQUIRE(zero.status == 0);
  CHECK(zero.out.find("boxfold    (0, 0)") != std::string::npos);
  CHECK(zero.out.find("translated (0, 0)") != std::string::npos);
  CHECK(zero.out.find("\"escaped\":false") != std::string::npos);

  const Run j = cli("probe " + scene.string() + " --point 10,0 --json");
  REQUIRE(j.status == 0);
  const json doc = json::parse(j.out);
  CHECK(doc["orbit"]["escape_iteration"] == 9);
  CHECK(doc["steps"][0]["translated"] == json::array({-6.0, 0.0}));
}
