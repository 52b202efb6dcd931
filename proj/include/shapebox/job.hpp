#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "shapebox/render.hpp"

namespace shapebox {

std::string version();
std::string build_hash();

/// Environment variable consulted when neither a flag nor the scene fixes the
/// thread count.
inline constexpr const char* kThreadsEnv = "SHAPEBOX_THREADS";

/// Precedence: flag, then an explicit scene value, then SHAPEBOX_THREADS,
/// then the hardware thread count.
std::size_t effective_threads(const SceneConfig& scene, std::optional<int> flag);

/// One full render as the CLI and the service produce it.
struct RenderJobResult {
  std::vector<std::uint8_t> png;
  RenderOutput output;
  double render_ms = 0.0;
  double encode_ms = 0.0;
};

RenderJobResult run_render_job(const SceneConfig& scene, WorkerPool& pool, const TileCallback& on_tile = {});

/// Sidecar document: scene hash, timings, tile count, hit-validity rate.
nlohmann::json render_metadata(const SceneConfig& scene, const RenderJobResult& result, std::size_t threads,
                               const nlohmann::json& overrides);

}  // namespace shapebox
