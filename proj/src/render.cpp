#include "shapebox/render.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <deque>
#include <exception>
#include <memory>
#include <mutex>

namespace shapebox {

TileStats& TileStats::operator+=(const TileStats& o) {
  samples += o.samples;
  member_samples += o.member_samples;
  rays += o.rays;
  hits += o.hits;
  valid_hits += o.valid_hits;
  return *this;
}

// -- shading ------------------------------------------------------------------

Rgb shade_linear(const OrbitResult& orbit, const Palette& palette) {
  double axis = std::numeric_limits<double>::infinity();
  for (double a : orbit.trap_axes) axis = std::min(axis, a);
  const double s_origin = std::exp(-palette.w_origin * orbit.trap_origin);
  const double s_axis = std::isfinite(axis) ? std::exp(-palette.w_axis * axis) : 0.0;
  const auto& [cold, warm, hot] = palette.colors;
  Rgb c{};
  for (int k = 0; k < 3; ++k) {
    const double base = cold[k] + (warm[k] - cold[k]) * s_axis;
    c[k] = base + (hot[k] - base) * s_origin;
  }
  return c;
}

Rgb apply_gamma(const Rgb& c, double gamma) {
  Rgb out{};
  for (int k = 0; k < 3; ++k) out[k] = std::pow(std::clamp(c[k], 0.0, 1.0), 1.0 / gamma);
  return out;
}

Rgb shade(const OrbitResult& orbit, const Palette& palette) {
  if (orbit.escaped) return palette.background;
  return apply_gamma(shade_linear(orbit, palette), palette.gamma);
}

std::array<std::uint8_t, 3> to_rgb8(const Rgb& c) {
  std::array<std::uint8_t, 3> out{};
  for (int k = 0; k < 3; ++k) out[k] = static_cast<std::uint8_t>(std::lround(std::clamp(c[k], 0.0, 1.0) * 255.0));
  return out;
}

// -- views ----------------------------------------------------------------------

Vec pixel_to_world(const ViewSpec& view, int width, int height, double fx, double fy) {
  auto plane = [&](double world_width) {
    const double per_pixel = world_width / width;
    return std::pair{(fx - width / 2.0) * per_pixel, (height / 2.0 - fy) * per_pixel};
  };
  if (const auto* w = std::get_if<Window2D>(&view)) {
    const auto [sx, sy] = plane(w->width);
    const double c = std::cos(w->rotation);
    const double s = std::sin(w->rotation);
    return {w->center[0] + (sx * c - sy * s), w->center[1] + (sx * s + sy * c)};
  }
  if (const auto* f = std::get_if<SliceFrame>(&view)) {
    const auto [sx, sy] = plane(f->width);
    Vec p(f->origin.dim());
    for (int k = 0; k < p.dim(); ++k) p[k] = f->origin[k] + sx * f->basis_u[k] + sy * f->basis_v[k];
    return p;
  }
  throw RenderError("pixel_to_world needs a window2d or slice view");
}

namespace {

struct CameraFrame {
  Vec eye, forward, right, up;
};

CameraFrame camera_frame(const Camera3D& c) {
  CameraFrame f;
  f.eye = Vec{c.eye[0], c.eye[1], c.eye[2]};
  f.forward = normalized(Vec{c.look_at[0], c.look_at[1], c.look_at[2]} - f.eye);
  f.right = normalized(cross(f.forward, Vec{c.up[0], c.up[1], c.up[2]}));
  f.up = cross(f.right, f.forward);
  return f;
}

}  // namespace

Ray primary_ray(const Camera3D& camera, int width, int height, double fx, double fy) {
  const CameraFrame f = camera_frame(camera);
  const double tan_half = std::tan(camera.vertical_fov / 2.0);
  const double aspect = static_cast<double>(width) / height;
  const double x = (2.0 * fx / width - 1.0) * aspect * tan_half;
  const double y = (1.0 - 2.0 * fy / height) * tan_half;
  return {f.eye, normalized(f.forward + f.right * x + f.up * y)};
}

Vec embed(const Vec& p3, const SceneConfig& scene) {
  if (scene.iteration.dimension == 3) return p3;
  const auto& cam = std::get<Camera3D>(scene.view);
  return {p3[0], p3[1], p3[2], cam.w_slice.value_or(0.0)};
}

double estimate_distance(const Vec& p3, const SceneConfig& scene) {
  return estimate_distance(embed(p3, scene), scene.iteration, scene.tuning.fudge);
}

MarchResult march_ray(const SceneConfig& scene, const Ray& ray) {
  const auto& tune = scene.tuning;
  const double eps = tune.hit_epsilon;
  const double min_step = 0.5 * eps;
  auto inside = [&](double t) { return membership(embed(ray.origin + ray.direction * t, scene), scene.iteration); };

  MarchResult r;
  double t = 0.0;
  double t_prev = 0.0;
  while (r.steps < tune.max_steps) {
    ++r.steps;
    const Vec p = embed(ray.origin + ray.direction * t, scene);
    const DerivativeOrbit o = iterate_with_derivative(p, scene.iteration);
    if (!o.result.escaped) {
      // Candidate hit inside the set: bisect against the last outside sample.
      double lo = t_prev;
      double hi = t;
      while (hi - lo >= 0.25 * eps) {
        const double mid = 0.5 * (lo + hi);
        (inside(mid) ? hi : lo) = mid;
      }
      r.hit = true;
      r.t_hit = hi;
      r.t_outside = lo;
      return r;
    }
    const double de = tune.fudge * o.result.final_magnitude / std::abs(o.derivative);
    t_prev = t;
    t += std::max(de, min_step);
    if (t > tune.max_distance) break;
  }
  return r;
}

bool hit_is_valid(const SceneConfig& scene, const Ray& ray, double t_hit) {
  const double eps = scene.tuning.hit_epsilon;
  bool prev = false;
  for (int k = -10; k <= 10; ++k) {
    const double t = t_hit + k * eps / 10.0;
    const bool in = membership(embed(ray.origin + ray.direction * t, scene), scene.iteration);
    if (k > -10 && !prev && in) return true;
    prev = in;
  }
  return false;
}

// -- tiles ----------------------------------------------------------------------

std::vector<Rect> tile_grid(int width, int height, int tile) {
  if (width < 1 || height < 1 || tile < 1) throw RenderError("tile_grid needs positive image and tile sizes");
  std::vector<Rect> out;
  for (int y = 0; y < height; y += tile) {
    for (int x = 0; x < width; x += tile) out.push_back({x, y, std::min(tile, width - x), std::min(tile, height - y)});
  }
  return out;
}

namespace {

constexpr double kSupersampleOffsets[2] = {0.25, 0.75};

void check_rect(const SceneConfig& scene, const Rect& r) {
  if (r.w < 1 || r.h < 1 || r.x < 0 || r.y < 0 || r.x + r.w > scene.width || r.y + r.h > scene.height) {
    throw RenderError("tile rectangle lies outside the image");
  }
}

TileImage blank_tile(const Rect& r) {
  TileImage t;
  t.rect = r;
  t.rgb.resize(static_cast<std::size_t>(r.w) * static_cast<std::size_t>(r.h) * 3);
  return t;
}

// Shades every pixel of the tile as the mean of one or four samples.
template <class Sample>
TileImage fill_tile(const SceneConfig& scene, const Rect& rect, Sample&& sample) {
  TileImage tile = blank_tile(rect);
  const bool ss = scene.tuning.supersample;
  std::size_t at = 0;
  for (int y = rect.y; y < rect.y + rect.h; ++y) {
    for (int x = rect.x; x < rect.x + rect.w; ++x) {
      Rgb c{};
      if (ss) {
        for (double oy : kSupersampleOffsets) {
          for (double ox : kSupersampleOffsets) {
            const Rgb s = sample(x + ox, y + oy, tile.stats);
            for (int k = 0; k < 3; ++k) c[k] += 0.25 * s[k];
          }
        }
      } else {
        c = sample(x + 0.5, y + 0.5, tile.stats);
      }
      const auto px = to_rgb8(c);
      tile.rgb[at++] = px[0];
      tile.rgb[at++] = px[1];
      tile.rgb[at++] = px[2];
    }
  }
  return tile;
}

}  // namespace

TileImage render_sampled(const SceneConfig& scene, const Rect& rect) {
  if (std::holds_alternative<Camera3D>(scene.view)) throw RenderError("sampled rendering needs a window2d or slice view");
  check_rect(scene, rect);
  return fill_tile(scene, rect, [&](double fx, double fy, TileStats& stats) {
    const OrbitResult o = iterate(pixel_to_world(scene.view, scene.width, scene.height, fx, fy), scene.iteration);
    ++stats.samples;
    if (!o.escaped) ++stats.member_samples;
    return shade(o, scene.palette);
  });
}

TileImage raymarch(const SceneConfig& scene, const Rect& rect) {
  const auto* cam = std::get_if<Camera3D>(&scene.view);
  if (!cam) throw RenderError("raymarch needs a camera3d view");
  check_rect(scene, rect);
  const CameraFrame frame = camera_frame(*cam);
  const Vec light = normalized(frame.up * 0.8 + frame.right * 0.45 - frame.forward * 0.6);
  const double h = 2.0 * scene.tuning.hit_epsilon;

  return fill_tile(scene, rect, [&](double fx, double fy, TileStats& stats) -> Rgb {
    const Ray ray = primary_ray(*cam, scene.width, scene.height, fx, fy);
    ++stats.rays;
    ++stats.samples;
    const MarchResult m = march_ray(scene, ray);
    if (!m.hit) return scene.palette.background;
    ++stats.hits;
    ++stats.member_samples;
    if (hit_is_valid(scene, ray, m.t_hit)) ++stats.valid_hits;

    const OrbitResult orbit = iterate(embed(ray.origin + ray.direction * m.t_hit, scene), scene.iteration);
    const Vec p = ray.origin + ray.direction * m.t_outside;
    Vec grad(3);
    for (int k = 0; k < 3; ++k) {
      const Vec e = Vec::axis(3, k) * h;
      grad[k] = estimate_distance(p + e, scene) - estimate_distance(p - e, scene);
    }
    const double g = grad.norm();
    const Vec normal = g > 0.0 ? grad * (1.0 / g) : -ray.direction;
    const double diffuse = std::max(0.0, dot(normal, light));
    const double occlusion = 1.0 / (1.0 + 0.015 * m.steps);
    Rgb c = shade_linear(orbit, scene.palette);
    for (auto& ch : c) ch *= (0.25 + 0.75 * diffuse) * occlusion;
    return apply_gamma(c, scene.palette.gamma);
  });
}

TileImage render_tile(const SceneConfig& scene, const Rect& rect) {
  return scene.renderer == RendererKind::kRaymarch ? raymarch(scene, rect) : render_sampled(scene, rect);
}

Image assemble(const std::vector<TileImage>& tiles, int width, int height) {
  if (width < 1 || height < 1) throw AssemblyError("image dimensions must be positive");
  auto describe = [](const Rect& r) {
    return "(" + std::to_string(r.x) + ", " + std::to_string(r.y) + ", " + std::to_string(r.w) + "x" +
           std::to_string(r.h) + ")";
  };
  Image img{width, height, std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height * 3)};
  std::vector<bool> covered(static_cast<std::size_t>(width) * height, false);
  for (const auto& t : tiles) {
    const Rect& r = t.rect;
    if (r.w < 1 || r.h < 1 || r.x < 0 || r.y < 0 || r.x + r.w > width || r.y + r.h > height) {
      throw AssemblyError("tile " + describe(r) + " lies outside the image");
    }
    if (t.rgb.size() != static_cast<std::size_t>(r.w) * r.h * 3) {
      throw AssemblyError("tile " + describe(r) + " has the wrong pixel count");
    }
    for (int y = 0; y < r.h; ++y) {
      for (int x = 0; x < r.w; ++x) {
        const std::size_t at = static_cast<std::size_t>(r.y + y) * width + (r.x + x);
        if (covered[at]) throw AssemblyError("tile " + describe(r) + " overlaps another tile");
        covered[at] = true;
      }
      std::copy_n(t.rgb.data() + static_cast<std::size_t>(y) * r.w * 3, static_cast<std::size_t>(r.w) * 3,
                  img.rgb.data() + (static_cast<std::size_t>(r.y + y) * width + r.x) * 3);
    }
  }
  for (std::size_t at = 0; at < covered.size(); ++at) {
    if (!covered[at]) {
      const Rect gap{static_cast<int>(at % width), static_cast<int>(at / width), 1, 1};
      throw AssemblyError("no tile covers pixel " + describe(gap));
    }
  }
  return img;
}

namespace {

struct Completion {
  std::mutex mutex;
  std::condition_variable done;
  std::deque<std::pair<TileImage, std::exception_ptr>> finished;
  std::atomic<bool> cancelled{false};
};

}  // namespace

RenderOutput render_image(const SceneConfig& scene, WorkerPool& pool, const TileCallback& on_tile) {
  validate_scene(scene);
  const auto shared_scene = std::make_shared<const SceneConfig>(scene);
  const auto rects = tile_grid(scene.width, scene.height, scene.tile_size);
  auto state = std::make_shared<Completion>();

  for (const Rect& r : rects) {
    pool.submit([state, shared_scene, r] {
      if (state->cancelled.load()) return;
      std::pair<TileImage, std::exception_ptr> out;
      try {
        out.first = render_tile(*shared_scene, r);
      } catch (...) {
        out.second = std::current_exception();
      }
      {
        std::lock_guard lock(state->mutex);
        state->finished.push_back(std::move(out));
      }
      state->done.notify_one();
    });
  }

  RenderOutput result;
  std::vector<TileImage> tiles;
  tiles.reserve(rects.size());
  try {
    while (tiles.size() < rects.size()) {
      std::pair<TileImage, std::exception_ptr> next;
      {
        std::unique_lock lock(state->mutex);
        state->done.wait(lock, [&] { return !state->finished.empty(); });
        next = std::move(state->finished.front());
        state->finished.pop_front();
      }
      if (next.second) std::rethrow_exception(next.second);
      if (on_tile) on_tile(next.first);
      result.stats += next.first.stats;
      tiles.push_back(std::move(next.first));
    }
  } catch (...) {
    state->cancelled = true;
    throw;
  }
  result.image = assemble(tiles, scene.width, scene.height);
  result.tile_count = tiles.size();
  return result;
}

RenderOutput render_reference(const SceneConfig& scene) {
  validate_scene(scene);
  RenderOutput out;
  TileImage tile = render_tile(scene, Rect{0, 0, scene.width, scene.height});
  out.stats = tile.stats;
  out.image = assemble({tile}, scene.width, scene.height);
  out.tile_count = 1;
  return out;
}

}  // namespace shapebox
