#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "shapebox/png.hpp"
#include "shapebox/scene.hpp"
#include "shapebox/worker_pool.hpp"

namespace shapebox {

struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
  bool operator==(const Rect&) const = default;
};

/// Per-tile counters, summed over the image by the renderer.
struct TileStats {
  std::int64_t samples = 0;
  std::int64_t member_samples = 0;  // sampled renders: seeds that never escaped
  std::int64_t rays = 0;
  std::int64_t hits = 0;        // raymarch: rays that found the surface
  std::int64_t valid_hits = 0;  // hits confirmed by a fine membership scan

  TileStats& operator+=(const TileStats& o);
};

struct TileImage {
  Rect rect;
  std::vector<std::uint8_t> rgb;  // row-major, rect.w * rect.h * 3 bytes
  TileStats stats;
};

class RenderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AssemblyError : public RenderError {
 public:
  using RenderError::RenderError;
};

// -- shading ------------------------------------------------------------------

/// Escaped orbits give the background exactly; members blend the three palette
/// colors by exp(−w_axis·min axis trap) and exp(−w_origin·origin trap), then
/// apply gamma.
Rgb shade(const OrbitResult& orbit, const Palette& palette);
Rgb shade_linear(const OrbitResult& orbit, const Palette& palette);
Rgb apply_gamma(const Rgb& c, double gamma);
std::array<std::uint8_t, 3> to_rgb8(const Rgb& c);

// -- views ----------------------------------------------------------------------

/// Maps a continuous image coordinate (pixel centers sit at i + 0.5) to a world
/// point. The image center maps to the view center; the image width spans the
/// configured world width; y grows upwards in world space.
Vec pixel_to_world(const ViewSpec& view, int width, int height, double fx, double fy);

struct Ray {
  Vec origin;
  Vec direction;  // unit length
};
Ray primary_ray(const Camera3D& camera, int width, int height, double fx, double fy);

/// Lifts a 3D ray-march point into the scene's dimension (appends w_slice).
Vec embed(const Vec& p3, const SceneConfig& scene);

/// DE at a 3D point of a 3D scene or a fixed-w slice of a 4D scene.
double estimate_distance(const Vec& p3, const SceneConfig& scene);

struct MarchResult {
  bool hit = false;
  double t_hit = 0.0;      // inside sample after refinement
  double t_outside = 0.0;  // last outside sample of the refined bracket
  int steps = 0;
};

/// Sphere-traces one ray, then refines candidate hits by membership bisection
/// until the bracket is narrower than hit_epsilon/4.
MarchResult march_ray(const SceneConfig& scene, const Ray& ray);

/// Scans [t−ε, t+ε] at ε/10 and reports whether membership flips from
/// outside to inside somewhere in the window.
bool hit_is_valid(const SceneConfig& scene, const Ray& ray, double t_hit);

// -- tiles ----------------------------------------------------------------------

/// Row-major tiles of at most tile×tile pixels covering the image.
std::vector<Rect> tile_grid(int width, int height, int tile);

TileImage render_sampled(const SceneConfig& scene, const Rect& rect);
TileImage raymarch(const SceneConfig& scene, const Rect& rect);
TileImage render_tile(const SceneConfig& scene, const Rect& rect);

/// Throws AssemblyError naming the first tile that overlaps, leaves the image
/// or leaves a pixel uncovered.
Image assemble(const std::vector<TileImage>& tiles, int width, int height);

struct RenderOutput {
  Image image;
  TileStats stats;
  std::size_t tile_count = 0;
};

using TileCallback = std::function<void(const TileImage&)>;

/// Validates, then renders every tile on the pool. on_tile runs on the calling
/// thread in completion order; returning early via exception from on_tile
/// cancels tiles that have not started.
RenderOutput render_image(const SceneConfig& scene, WorkerPool& pool, const TileCallback& on_tile = {});

/// Single tile, calling thread only. The oracle for the tiled path.
RenderOutput render_reference(const SceneConfig& scene);

}  // namespace shapebox
