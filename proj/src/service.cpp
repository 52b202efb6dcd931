#include "shapebox/service.hpp"

#include <httplib.h>

#include <atomic>
#include <stdexcept>

#include "shapebox/job.hpp"
#include "shapebox/presets.hpp"
#include "shapebox/probe.hpp"

namespace shapebox {

namespace stream {

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v >> 24));
  out.push_back(static_cast<char>(v >> 16));
  out.push_back(static_cast<char>(v >> 8));
  out.push_back(static_cast<char>(v));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
  return (std::uint32_t{b[at]} << 24) | (std::uint32_t{b[at + 1]} << 16) | (std::uint32_t{b[at + 2]} << 8) |
         std::uint32_t{b[at + 3]};
}

std::string frame(FrameType type, const std::string& payload) {
  std::string out;
  put_u32(out, static_cast<std::uint32_t>(payload.size() + 1));
  out.push_back(static_cast<char>(type));
  out += payload;
  return out;
}

}  // namespace

std::string encode_tile_frame(const TileImage& tile) {
  const auto png = encode_png(Image{tile.rect.w, tile.rect.h, tile.rgb});
  std::string payload;
  put_u32(payload, static_cast<std::uint32_t>(tile.rect.x));
  put_u32(payload, static_cast<std::uint32_t>(tile.rect.y));
  put_u32(payload, static_cast<std::uint32_t>(tile.rect.w));
  put_u32(payload, static_cast<std::uint32_t>(tile.rect.h));
  payload.append(png.begin(), png.end());
  return frame(FrameType::kTile, payload);
}

std::string encode_error_frame(const std::string& message, const std::string& path) {
  return frame(FrameType::kError, nlohmann::json{{"error", message}, {"path", path}}.dump());
}

std::vector<Frame> decode_frames(std::span<const std::uint8_t> body) {
  std::vector<Frame> out;
  std::size_t at = 0;
  while (at < body.size()) {
    if (body.size() - at < 5) throw std::runtime_error("truncated frame header");
    const std::uint32_t len = get_u32(body, at);
    if (len < 1 || body.size() - at - 4 < len) throw std::runtime_error("truncated frame");
    Frame f;
    const std::uint8_t type = body[at + 4];
    const auto payload = body.subspan(at + 5, len - 1);
    if (type == static_cast<std::uint8_t>(FrameType::kTile)) {
      if (payload.size() < 16) throw std::runtime_error("tile frame without rectangle header");
      f.type = FrameType::kTile;
      f.rect = {static_cast<int>(get_u32(payload, 0)), static_cast<int>(get_u32(payload, 4)),
                static_cast<int>(get_u32(payload, 8)), static_cast<int>(get_u32(payload, 12))};
      f.payload.assign(payload.begin() + 16, payload.end());
    } else if (type == static_cast<std::uint8_t>(FrameType::kError)) {
      f.type = FrameType::kError;
      f.payload.assign(payload.begin(), payload.end());
    } else {
      throw std::runtime_error("unknown frame type " + std::to_string(type));
    }
    out.push_back(std::move(f));
    at += 4 + len;
  }
  return out;
}

}  // namespace stream

namespace {

using nlohmann::json;

constexpr const char* kJson = "application/json";

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void send_error(httplib::Response& res, int status, const std::string& message, const std::string& path = "") {
  send_json(res, status, {{"error", message}, {"path", path}});
}

// Counting gate on simultaneous render jobs.
class JobSlots {
 public:
  explicit JobSlots(std::size_t limit) : limit_(limit) {}
  bool try_acquire() {
    if (active_.fetch_add(1) >= limit_) {
      active_.fetch_sub(1);
      return false;
    }
    return true;
  }
  void release() { active_.fetch_sub(1); }

 private:
  std::size_t limit_;
  std::atomic<std::size_t> active_{0};
};

}  // namespace

struct RenderService::Impl {
  explicit Impl(ServiceConfig c)
      : config(std::move(c)),
        pool(config.threads ? config.threads : WorkerPool::default_size()),
        slots(config.max_jobs ? config.max_jobs : pool.size()) {
    routes();
  }

  ServiceConfig config;
  WorkerPool pool;
  JobSlots slots;
  httplib::Server server;

  // Parses and size-checks a render request; fills res and returns nullopt on failure.
  std::optional<SceneConfig> admit(const httplib::Request& req, httplib::Response& res, bool framed) {
    auto reject = [&](int status, const std::string& message, const std::string& path) {
      if (framed) {
        res.status = status;
        res.set_content(stream::encode_error_frame(message, path), "application/octet-stream");
      } else {
        send_error(res, status, message, path);
      }
      return std::nullopt;
    };
    SceneConfig scene;
    try {
      scene = parse_scene(req.body);
    } catch (const SceneError& e) {
      return reject(422, e.message(), e.path());
    }
    const auto pixels = static_cast<std::int64_t>(scene.width) * scene.height;
    if (pixels > config.max_pixels) {
      return reject(413, "image area " + std::to_string(pixels) + " exceeds the " + std::to_string(config.max_pixels) +
                             " pixel cap",
                    "image");
    }
    if (!slots.try_acquire()) return reject(429, "render queue is full", "");
    return scene;
  }

  void routes() {
    server.set_payload_max_length(config.max_body_bytes);

    server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
      send_json(res, 200, {{"status", "ok"}, {"version", version()}, {"build", build_hash()}});
    });

    server.Get("/api/v1/presets", [](const httplib::Request&, httplib::Response& res) {
      json list = json::array();
      for (const auto& p : presets()) {
        list.push_back({{"name", p.name}, {"description", p.description}, {"scene", scene_to_json(p.scene)}});
      }
      send_json(res, 200, list);
    });

    server.Post("/api/v1/render", [this](const httplib::Request& req, httplib::Response& res) {
      auto scene = admit(req, res, false);
      if (!scene) return;
      try {
        RenderJobResult r = run_render_job(*scene, pool);
        slots.release();
        res.status = 200;
        res.set_content(std::string(r.png.begin(), r.png.end()), "image/png");
      } catch (const std::exception& e) {
        slots.release();
        send_error(res, 500, e.what());
      }
    });

    server.Post("/api/v1/render/stream", [this](const httplib::Request& req, httplib::Response& res) {
      auto scene = admit(req, res, true);
      if (!scene) return;
      auto job = std::make_shared<SceneConfig>(std::move(*scene));
      res.status = 200;
      res.set_chunked_content_provider(
          "application/octet-stream",
          [this, job](std::size_t, httplib::DataSink& sink) {
            struct Disconnected {};
            try {
              render_image(*job, pool, [&](const TileImage& tile) {
                const std::string f = stream::encode_tile_frame(tile);
                if (!sink.write(f.data(), f.size())) throw Disconnected{};
              });
            } catch (const Disconnected&) {
              return false;
            } catch (const std::exception& e) {
              const std::string f = stream::encode_error_frame(e.what(), "");
              sink.write(f.data(), f.size());
            }
            sink.done();
            return true;
          },
          [this](bool) { slots.release(); });
    });

    server.Post("/api/v1/probe", [](const httplib::Request& req, httplib::Response& res) {
      json doc;
      try {
        doc = json::parse(req.body);
      } catch (const json::parse_error& e) {
        return send_error(res, 422, std::string("malformed document: ") + e.what());
      }
      if (!doc.is_object()) return send_error(res, 422, "expected an object with 'scene' and 'point'");
      for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (it.key() != "scene" && it.key() != "point" && it.key() != "max_iterations") {
          return send_error(res, 422, "unknown field", it.key());
        }
      }
      if (!doc.contains("scene")) return send_error(res, 422, "required field is missing", "scene");
      if (!doc.contains("point")) return send_error(res, 422, "required field is missing", "point");
      try {
        const SceneConfig scene = scene_from_json(doc["scene"], "scene");
        const json& pt = doc["point"];
        if (!pt.is_array() || pt.size() < 2 || pt.size() > 4) {
          return send_error(res, 422, "expected an array of 2 to 4 numbers", "point");
        }
        std::vector<double> values;
        for (const auto& v : pt) {
          if (!v.is_number()) return send_error(res, 422, "expected an array of numbers", "point");
          values.push_back(v.get<double>());
        }
        std::optional<int> cap;
        if (doc.contains("max_iterations")) {
          if (!doc["max_iterations"].is_number_integer()) {
            return send_error(res, 422, "expected an integer", "max_iterations");
          }
          cap = doc["max_iterations"].get<int>();
        }
        send_json(res, 200, probe_to_json(probe(scene, Vec::from_span(values), cap)));
      } catch (const SceneError& e) {
        send_error(res, 422, e.message(), e.path());
      } catch (const ProbeError& e) {
        send_error(res, 422, e.what(), "point");
      }
    });

    // Known paths answer other methods with 405; everything else falls through to 404.
    const std::pair<const char*, const char*> known[] = {{"/healthz", "GET"},
                                                         {"/api/v1/presets", "GET"},
                                                         {"/api/v1/render", "POST"},
                                                         {"/api/v1/render/stream", "POST"},
                                                         {"/api/v1/probe", "POST"}};
    for (const auto& [path, allowed] : known) {
      const std::string allow = allowed;
      auto not_allowed = [allow](const httplib::Request&, httplib::Response& res) {
        res.set_header("Allow", allow);
        send_error(res, 405, "method not allowed; use " + allow);
      };
      if (allow != "GET") server.Get(path, not_allowed);
      if (allow != "POST") server.Post(path, not_allowed);
      server.Put(path, not_allowed);
      server.Delete(path, not_allowed);
      server.Patch(path, not_allowed);
    }
  }
};

RenderService::RenderService(ServiceConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {}
RenderService::~RenderService() { stop(); }

int RenderService::bind() {
  auto& c = impl_->config;
  if (c.port == 0) {
    const int port = impl_->server.bind_to_any_port(c.bind_address);
    if (port < 0) throw IoError("cannot bind " + c.bind_address);
    c.port = port;
    return port;
  }
  if (!impl_->server.bind_to_port(c.bind_address, c.port)) {
    throw IoError("cannot bind " + c.bind_address + ":" + std::to_string(c.port));
  }
  return c.port;
}

void RenderService::listen() { impl_->server.listen_after_bind(); }
void RenderService::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}
void RenderService::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace shapebox
