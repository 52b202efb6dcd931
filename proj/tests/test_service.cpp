#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <httplib.h>

#include <chrono>
#include <future>
#include <thread>

#include "shapebox/job.hpp"
#include "shapebox/presets.hpp"
#include "shapebox/probe.hpp"
#include "shapebox/service.hpp"

using namespace shapebox;
using nlohmann::json;

namespace {

// Runs a service on a free loopback port for the lifetime of the object.
class Running {
 public:
  explicit Running(ServiceConfig config = {}) : service_([&] {
    config.port = 0;
    if (!config.threads) config.threads = 4;
    return config;
  }()) {
    port_ = service_.bind();
    thread_ = std::thread([this] { service_.listen(); });
    service_.wait_until_ready();
  }
  ~Running() {
    service_.stop();
    thread_.join();
  }
  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(120, 0);
    return c;
  }

 private:
  RenderService service_;
  int port_ = 0;
  std::thread thread_;
};

std::string scene_doc(const char* name, int size = 0, int tile = 0) {
  SceneConfig s = find_preset(name)->scene;
  if (size) s.width = s.height = size;
  if (tile) s.tile_size = tile;
  return dump_scene(s);
}

std::vector<std::uint8_t> local_png(const std::string& doc) {
  WorkerPool pool(2);
  return run_render_job(parse_scene(doc), pool).png;
}

std::span<const std::uint8_t> bytes(const std::string& s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

}  // namespace

TEST_CASE("health, methods and unknown paths") {
  Running svc;
  auto c = svc.client();
  auto h = c.Get("/healthz");
  REQUIRE(h);
  CHECK(h->status == 200);
  const json body = json::parse(h->body);
  CHECK(body["version"] == version());
  CHECK(body["status"] == "ok");

  CHECK(c.Post("/healthz", "", "text/plain")->status == 405);
  CHECK(c.Delete("/healthz")->status == 405);
  CHECK(c.Get("/api/v1/render")->status == 405);
  CHECK(c.Get("/api/v1/render")->get_header_value("Allow") == "POST");
  CHECK(c.Get("/nope")->status == 404);
}

TEST_CASE("preset catalog") {
  Running svc;
  auto r = svc.client().Get("/api/v1/presets");
  REQUIRE(r);
  const json list = json::parse(r->body);
  REQUIRE(list.size() == presets().size());
  for (std::size_t i = 0; i < list.size(); ++i) {
    CHECK(list[i]["name"] == presets()[i].name);
    CHECK(scene_from_json(list[i]["scene"]) == presets()[i].scene);
  }
}

TEST_CASE("one-shot render") {
  Running svc;
  auto c = svc.client();
  const std::string doc = scene_doc("classic2d");
  auto r = c.Post("/api/v1/render", doc, "application/json");
  REQUIRE(r);
  CHECK(r->status == 200);
  CHECK(r->get_header_value("Content-Type") == "image/png");
  CHECK(std::vector<std::uint8_t>(r->body.begin(), r->body.end()) == local_png(doc));

  json bad = json::parse(doc);
  bad["image"]["depth"] = 8;
  auto u = c.Post("/api/v1/render", bad.dump(), "application/json");
  CHECK(u->status == 422);
  CHECK(json::parse(u->body)["path"] == "image.depth");

  json big = json::parse(doc);
  big["image"] = {{"width", 10000}, {"height", 10000}};
  auto b = c.Post("/api/v1/render", big.dump(), "application/json");
  CHECK(b->status == 413);
  CHECK(json::parse(b->body)["path"] == "image");

  CHECK(c.Post("/api/v1/render", std::string(2u << 20, ' '), "application/json")->status == 413);
  CHECK(c.Post("/api/v1/render", "{not json", "application/json")->status == 422);
}

TEST_CASE("full queue answers 429") {
  ServiceConfig cfg;
  cfg.threads = 1;
  cfg.max_jobs = 1;
  Running svc(cfg);
  const std::string slow = scene_doc("classic3d", 96);
  auto first = std::async(std::launch::async, [&] { return svc.client().Post("/api/v1/render", slow, "application/json"); });
  std::this_thread::sleep_for(std::chrono::milliseconds(400));
  auto second = svc.client().Post("/api/v1/render", scene_doc("classic2d", 8), "application/json");
  REQUIRE(second);
  CHECK(second->status == 429);
  auto done = first.get();
  REQUIRE(done);
  CHECK(done->status == 200);
  // the slot is free again
  CHECK(svc.client().Post("/api/v1/render", scene_doc("classic2d", 8), "application/json")->status == 200);
}

TEST_CASE("concurrent renders return identical bytes") {
  ServiceConfig cfg;
  cfg.max_jobs = 8;
  Running svc(cfg);
  const std::string doc = scene_doc("cube3d", 48);
  std::vector<std::future<httplib::Result>> jobs;
  for (int i = 0; i < 4; ++i) {
    jobs.push_back(std::async(std::launch::async, [&] { return svc.client().Post("/api/v1/render", doc, "application/json"); }));
  }
  const auto expected = local_png(doc);
  for (auto& j : jobs) {
    auto r = j.get();
    REQUIRE(r);
    REQUIRE(r->status == 200);
    CHECK(std::vector<std::uint8_t>(r->body.begin(), r->body.end()) == expected);
  }
}

TEST_CASE("streamed tiles reassemble the image") {
  Running svc;
  auto c = svc.client();
  const std::string doc = scene_doc("classic2d", 64, 32);
  auto r = c.Post("/api/v1/render/stream", doc, "application/json");
  REQUIRE(r);
  CHECK(r->status == 200);
  const auto frames = stream::decode_frames(bytes(r->body));
  REQUIRE(frames.size() == 4);
  std::vector<TileImage> tiles;
  for (const auto& f : frames) {
    REQUIRE(f.type == stream::FrameType::kTile);
    const Image tile = decode_png(f.payload);
    CHECK(tile.width == f.rect.w);
    CHECK(tile.height == f.rect.h);
    tiles.push_back({f.rect, tile.rgb, {}});
  }
  CHECK(assemble(tiles, 64, 64) == decode_png(local_png(doc)));

  auto one = c.Post("/api/v1/render/stream", scene_doc("classic2d", 64, 100), "application/json");
  CHECK(stream::decode_frames(bytes(one->body)).size() == 1);

  json bad = json::parse(doc);
  bad["iteration"]["outer_shape"]["radius"] = -1;
  auto e = c.Post("/api/v1/render/stream", bad.dump(), "application/json");
  CHECK(e->status == 422);
  const auto err = stream::decode_frames(bytes(e->body));
  REQUIRE(err.size() == 1);
  CHECK(err[0].type == stream::FrameType::kError);
  CHECK(json::parse(std::string(err[0].payload.begin(), err[0].payload.end()))["path"] ==
        "iteration.outer_shape.radius");
}

TEST_CASE("frame codec") {
  TileImage t{{3, 4, 1, 1}, {9, 8, 7}, {}};
  const std::string f = stream::encode_tile_frame(t);
  const std::uint32_t len = (std::uint8_t(f[0]) << 24) | (std::uint8_t(f[1]) << 16) | (std::uint8_t(f[2]) << 8) | std::uint8_t(f[3]);
  CHECK(len == f.size() - 4);
  const auto frames = stream::decode_frames(bytes(f + stream::encode_error_frame("boom", "x")));
  REQUIRE(frames.size() == 2);
  CHECK(frames[0].rect == t.rect);
  CHECK(decode_png(frames[0].payload).rgb == t.rgb);
  CHECK(frames[1].type == stream::FrameType::kError);
  CHECK_THROWS(stream::decode_frames(bytes(f.substr(0, f.size() - 1))));
}

TEST_CASE("probe endpoint") {
  Running svc;
  auto c = svc.client();
  const SceneConfig scene = find_preset("square2d")->scene;
  const json req{{"scene", scene_to_json(scene)}, {"point", {1.5, 0.2}}, {"max_iterations", 4}};
  auto r = c.Post("/api/v1/probe", req.dump(), "application/json");
  REQUIRE(r);
  CHECK(r->status == 200);
  CHECK(json::parse(r->body) == probe_to_json(probe(scene, Vec{1.5, 0.2}, 4)));

  auto zero = c.Post("/api/v1/probe", json{{"scene", scene_to_json(scene)}, {"point", {0, 0}}}.dump(), "application/json");
  for (const auto& st : json::parse(zero->body)["steps"]) CHECK(st["translated"] == json::array({0.0, 0.0}));

  const json four{{"scene", scene_to_json(find_preset("hyper4d-cube")->scene)}, {"point", {0.1, 0.2, 0.3}}};
  auto wrong = c.Post("/api/v1/probe", four.dump(), "application/json");
  CHECK(wrong->status == 422);
  CHECK(json::parse(wrong->body)["path"] == "point");

  json extra = req;
  extra["colour"] = 1;
  auto x = c.Post("/api/v1/probe", extra.dump(), "application/json");
  CHECK(x->status == 422);
  CHECK(json::parse(x->body)["path"] == "colour");

  json badscene = req;
  badscene["scene"]["iteration"]["scale"] = 0;
  CHECK(json::parse(c.Post("/api/v1/probe", badscene.dump(), "application/json")->body)["path"] == "scene.iteration.scale");
}
