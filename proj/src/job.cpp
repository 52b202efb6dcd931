#include "shapebox/job.hpp"

#include <chrono>
#include <cstdlib>

namespace shapebox {

std::string version() { return SHAPEBOX_VERSION; }
std::string build_hash() { return SHAPEBOX_BUILD_HASH; }

std::size_t effective_threads(const SceneConfig& scene, std::optional<int> flag) {
  if (flag && *flag > 0) return static_cast<std::size_t>(*flag);
  if (scene.threads) return static_cast<std::size_t>(*scene.threads);
  if (const char* env = std::getenv(kThreadsEnv)) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return WorkerPool::default_size();
}

RenderJobResult run_render_job(const SceneConfig& scene, WorkerPool& pool, const TileCallback& on_tile) {
  using clock = std::chrono::steady_clock;
  RenderJobResult r;
  const auto t0 = clock::now();
  r.output = render_image(scene, pool, on_tile);
  const auto t1 = clock::now();
  r.png = encode_png(r.output.image);
  const auto t2 = clock::now();
  r.render_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  r.encode_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
  return r;
}

nlohmann::json render_metadata(const SceneConfig& scene, const RenderJobResult& result, std::size_t threads,
                               const nlohmann::json& overrides) {
  const TileStats& s = result.output.stats;
  nlohmann::json meta;
  meta["scene_hash"] = scene_hash(scene);
  meta["version"] = version();
  meta["image"] = {{"width", scene.width}, {"height", scene.height}};
  meta["renderer"] = scene.renderer == RendererKind::kRaymarch ? "raymarch" : "sampled";
  meta["tile_count"] = result.output.tile_count;
  meta["tile_size"] = scene.tile_size;
  meta["threads"] = threads;
  meta["timings_ms"] = {{"render", result.render_ms}, {"encode", result.encode_ms}};
  meta["samples"] = s.samples;
  meta["in_set_fraction"] = s.samples ? static_cast<double>(s.member_samples) / s.samples : 0.0;
  if (scene.renderer == RendererKind::kRaymarch) {
    meta["hits"] = s.hits;
    meta["hit_validity_rate"] = s.hits ? static_cast<double>(s.valid_hits) / s.hits : 1.0;
  } else {
    meta["hit_validity_rate"] = nullptr;
  }
  meta["overrides"] = overrides.is_null() ? nlohmann::json::object() : overrides;
  return meta;
}

}  // namespace shapebox
