#include "shapebox/presets.hpp"

namespace shapebox {

namespace {

SceneConfig planar(IterationParams it, double width) {
  SceneConfig s;
  it.dimension = 2;
  s.iteration = std::move(it);
  s.view = Window2D{{0.0, 0.0}, width, 0.0};
  s.renderer = RendererKind::kSampled;
  s.tuning.hit_epsilon = default_hit_epsilon(s.view);
  return s;
}

// Shared camera for the solid presets so 3D and 4D variants line up.
Camera3D solid_camera() {
  Camera3D c;
  c.eye = {10.0, 8.0, 16.0};
  c.look_at = {0.0, 0.0, 0.0};
  c.up = {0.0, 1.0, 0.0};
  c.vertical_fov = 0.75;
  return c;
}

SceneConfig solid(IterationParams it, int dimension, std::optional<double> w_slice = std::nullopt) {
  SceneConfig s;
  it.dimension = dimension;
  it.max_iterations = 12;
  s.iteration = std::move(it);
  Camera3D cam = solid_camera();
  cam.w_slice = w_slice;
  s.view = cam;
  s.width = 160;
  s.height = 160;
  s.palette.w_origin = 0.5;
  s.palette.w_axis = 2.0;
  s.renderer = RendererKind::kRaymarch;
  s.tuning.hit_epsilon = default_hit_epsilon(s.view);
  return s;
}

IterationParams classic(double scale) {
  IterationParams it;
  it.fold_halfwidth = 1.0;
  it.outer_shape = Shape::ball(1.0);
  it.min_shape = Shape::ball(0.5);
  it.scale_mode = RatioScale{};
  it.scale = scale;
  it.escape_distance = 1024.0;
  it.max_iterations = 100;
  return it;
}

IterationParams with_shapes(IterationParams it, Shape outer, Shape min) {
  it.outer_shape = std::move(outer);
  it.min_shape = std::move(min);
  return it;
}

std::vector<Preset> build() {
  std::vector<Preset> out;

  out.push_back({"classic2d", "2D Mandelbox, circle inversion, S=2", planar(classic(2.0), 8.0)});
  out.push_back({"classic2d-negative", "2D Mandelbox, circle inversion, S=-1.5", planar(classic(-1.5), 5.0)});
  {
    IterationParams it = with_shapes(classic(2.0), Shape::box(1.0), Shape::ball(0.5));
    it.max_iterations = 20;
    out.push_back({"square2d", "2D Mandelbox with inversion in a square", planar(it, 12.0)});
  }
  {
    IterationParams it = with_shapes(classic(2.0), Shape::fg_squircle(1.0, 0.9), Shape::hexagon(0.5));
    it.max_iterations = 20;
    out.push_back({"squircle-hex2d", "2D Mandelbox, FG-squircle inversion with a hexagon minimum shape", planar(it, 12.0)});
  }
  {
    IterationParams it = classic(2.0);
    it.offset = JuliboxOffset{Vec{0.6, -0.9}};
    out.push_back({"julibox2d", "2D Julibox indexed at J=(0.6, -0.9), circle inversion", planar(it, 8.0)});
  }

  out.push_back({"classic3d", "3D Mandelbox, spherical inversion, S=2", solid(classic(2.0), 3)});
  out.push_back({"cube3d", "3D Mandelbox with inversion in a cube",
                 solid(with_shapes(classic(2.0), Shape::box(0.85), Shape::ball(0.5)), 3)});
  out.push_back({"rotcube3d", "3D Mandelbox with inversion in a rotated cube",
                 solid(with_shapes(classic(2.0),
                                   Shape::rotated(Shape::box(0.85), Rotation(3, std::vector<double>{0.4, 0.3, 0.0})),
                                   Shape::ball(0.5)),
                       3)});
  out.push_back({"octa3d", "3D Mandelbox with inversion in an octahedron",
                 solid(with_shapes(classic(2.0), Shape::cross_polytope(1.4), Shape::ball(0.5)), 3)});
  out.push_back({"roundcube3d", "3D Mandelbox with inversion in a superellipsoid rounded cube",
                 solid(with_shapes(classic(2.0), Shape::superellipsoid(4.0, {0.9, 0.9, 0.9}), Shape::ball(0.5)), 3)});
  out.push_back({"union3d", "3D Mandelbox with inversion in the union of a sphere and a cube",
                 solid(with_shapes(classic(2.0), Shape::union_of(Shape::ball(0.9), Shape::box(0.75)), Shape::ball(0.5)),
                       3)});

  out.push_back({"hyper4d-cube", "4D Mandelbox with hypercube inversion, slice w=0",
                 solid(with_shapes(classic(2.0), Shape::box(0.85), Shape::ball(0.5)), 4, 0.0)});
  out.push_back(
      {"hyper4d-blend", "4D Mandelbox, hypersphere/hypercube blend inversion and blend minimum shape, slice w=0.3",
       solid(with_shapes(classic(2.0), Shape::blend(Shape::ball(1.0), Shape::box(0.8), 0.5),
                         Shape::blend(Shape::ball(0.5), Shape::box(0.4), 0.5)),
             4, 0.3)});
  {
    SceneConfig s;
    s.iteration = with_shapes(classic(2.0), Shape::union_of(Shape::ball(0.9), Shape::box(0.75)), Shape::ball(0.5));
    s.iteration.dimension = 4;
    s.view = SliceFrame{Vec{0.0, 0.0, 0.0, 0.5}, Vec{1.0, 0.0, 0.0, 0.0}, Vec{0.0, 0.0, 1.0, 0.0}, 9.0};
    s.renderer = RendererKind::kSampled;
    s.tuning.hit_epsilon = default_hit_epsilon(s.view);
    out.push_back({"hyper4d-union-slice", "Planar xz slice at w=0.5 through a hypersphere/hypercube union inversion", s});
  }
  return out;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> catalog = build();
  return catalog;
}

const Preset* find_preset(std::string_view name) {
  for (const auto& p : presets()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

}  // namespace shapebox
