#include "shapebox/scene.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <set>

namespace shapebox {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

[[noreturn]] void parse_error(const std::string& path, const std::string& message) {
  throw SceneError(SceneError::Kind::kParse, path, message);
}
[[noreturn]] void invalid(const std::string& path, const std::string& message) {
  throw SceneError(SceneError::Kind::kValidation, path, message);
}

const char* type_name(const json& j) { return j.type_name(); }

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) parse_error(path, std::string("expected a number, found ") + type_name(j));
  return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) parse_error(path, std::string("expected an integer, found ") + type_name(j));
  const auto v = j.get<std::int64_t>();
  if (v < INT32_MIN || v > INT32_MAX) parse_error(path, "integer out of range");
  return static_cast<int>(v);
}

std::vector<double> as_numbers(const json& j, const std::string& path) {
  if (!j.is_array()) parse_error(path, std::string("expected an array of numbers, found ") + type_name(j));
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_number(j[i], index(path, i)));
  return out;
}

template <std::size_t N>
std::array<double, N> as_fixed(const json& j, const std::string& path) {
  const auto v = as_numbers(j, path);
  if (v.size() != N) parse_error(path, "expected " + std::to_string(N) + " numbers, found " + std::to_string(v.size()));
  std::array<double, N> out{};
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

Vec as_vec(const json& j, const std::string& path) {
  const auto v = as_numbers(j, path);
  if (v.size() < 2 || v.size() > 4) parse_error(path, "expected 2 to 4 numbers, found " + std::to_string(v.size()));
  return Vec::from_span(v);
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) parse_error(path, std::string("expected a string, found ") + type_name(j));
  return j.get<std::string>();
}

// Tracks which keys of one JSON object were consumed so leftovers can be
// reported as unknown fields.
class Fields {
 public:
  Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j.is_object()) parse_error(path_, std::string("expected an object, found ") + type_name(j));
  }

  const json* get(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }
  const json& require(const std::string& key) {
    const json* v = get(key);
    if (!v) parse_error(join(path_, key), "required field is missing");
    return *v;
  }
  std::string at(const std::string& key) const { return join(path_, key); }

  double number(const std::string& key, double fallback) {
    const json* v = get(key);
    return v ? as_number(*v, at(key)) : fallback;
  }
  int integer(const std::string& key, int fallback) {
    const json* v = get(key);
    return v ? as_int(*v, at(key)) : fallback;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) parse_error(join(path_, it.key()), "unknown field");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

std::pair<Shape, Shape> two_children(Fields& f) {
  const std::string path = f.at("children");
  const json& c = f.require("children");
  if (!c.is_array() || c.size() != 2) parse_error(path, "expected an array of exactly 2 shapes");
  return {shape_from_json(c[0], index(path, 0)), shape_from_json(c[1], index(path, 1))};
}

}  // namespace

// -- Shapes ----------------------------------------------------------------------

Shape shape_from_json(const json& doc, const std::string& path) {
  // Nesting depth is read off the path so absurdly deep documents fail before
  // the recursion does.
  const auto depth = 1 + static_cast<int>(std::count(path.begin(), path.end(), '['));
  if (depth > kMaxShapeDepth) invalid(path, "shape tree deeper than " + std::to_string(kMaxShapeDepth) + " levels");

  Fields f(doc, path);
  const std::string kind = as_string(f.require("kind"), f.at("kind"));
  Shape out = Shape::ball(1.0);
  if (kind == "ball") {
    out = Shape::ball(as_number(f.require("radius"), f.at("radius")));
  } else if (kind == "box") {
    out = Shape::box(as_number(f.require("half_side"), f.at("half_side")));
  } else if (kind == "cross_polytope") {
    out = Shape::cross_polytope(as_number(f.require("radius"), f.at("radius")));
  } else if (kind == "hexagon") {
    out = Shape::hexagon(as_number(f.require("circumradius"), f.at("circumradius")));
  } else if (kind == "fg_squircle") {
    out = Shape::fg_squircle(as_number(f.require("radius"), f.at("radius")),
                             as_number(f.require("squareness"), f.at("squareness")));
  } else if (kind == "superellipsoid") {
    out = Shape::superellipsoid(as_number(f.require("exponent"), f.at("exponent")),
                                as_fixed<3>(f.require("semi_axes"), f.at("semi_axes")));
  } else if (kind == "union") {
    auto [a, b] = two_children(f);
    out = Shape::union_of(a, b);
  } else if (kind == "intersection") {
    auto [a, b] = two_children(f);
    out = Shape::intersection_of(a, b);
  } else if (kind == "blend") {
    const double t = as_number(f.require("t"), f.at("t"));
    auto [a, b] = two_children(f);
    out = Shape::blend(a, b, t);
  } else if (kind == "rotated") {
    const auto angles = as_numbers(f.require("angles"), f.at("angles"));
    int dim = 0;
    switch (angles.size()) {
      case 1:
        dim = 2;
        break;
      case 3:
        dim = 3;
        break;
      case 6:
        dim = 4;
        break;
      default:
        parse_error(f.at("angles"), "expected 1 (2D), 3 (3D) or 6 (4D) angles, found " + std::to_string(angles.size()));
    }
    const std::string cpath = f.at("children");
    const json& c = f.require("children");
    if (!c.is_array() || c.size() != 1) parse_error(cpath, "expected an array of exactly 1 shape");
    out = Shape::rotated(shape_from_json(c[0], index(cpath, 0)), Rotation(dim, angles));
  } else {
    parse_error(f.at("kind"), "unknown shape kind '" + kind + "'");
  }
  f.finish();
  return out;
}

json shape_to_json(const Shape& shape) {
  json j;
  j["kind"] = shape.kind();
  const auto& v = shape.node().value;
  if (const auto* s = std::get_if<shapes::Ball>(&v)) {
    j["radius"] = s->radius;
  } else if (const auto* s = std::get_if<shapes::Box>(&v)) {
    j["half_side"] = s->half_side;
  } else if (const auto* s = std::get_if<shapes::CrossPolytope>(&v)) {
    j["radius"] = s->radius;
  } else if (const auto* s = std::get_if<shapes::Hexagon>(&v)) {
    j["circumradius"] = s->circumradius;
  } else if (const auto* s = std::get_if<shapes::FgSquircle>(&v)) {
    j["radius"] = s->radius;
    j["squareness"] = s->squareness;
  } else if (const auto* s = std::get_if<shapes::Superellipsoid>(&v)) {
    j["exponent"] = s->exponent;
    j["semi_axes"] = s->semi_axes;
  } else if (const auto* s = std::get_if<shapes::Union>(&v)) {
    j["children"] = json::array({shape_to_json(s->a), shape_to_json(s->b)});
  } else if (const auto* s = std::get_if<shapes::Intersection>(&v)) {
    j["children"] = json::array({shape_to_json(s->a), shape_to_json(s->b)});
  } else if (const auto* s = std::get_if<shapes::Blend>(&v)) {
    j["t"] = s->t;
    j["children"] = json::array({shape_to_json(s->a), shape_to_json(s->b)});
  } else if (const auto* s = std::get_if<shapes::Rotated>(&v)) {
    j["angles"] = s->rotation.angles();
    j["children"] = json::array({shape_to_json(s->child)});
  }
  return j;
}

// -- Scene -----------------------------------------------------------------------

double default_hit_epsilon(const ViewSpec& view) {
  if (const auto* cam = std::get_if<Camera3D>(&view)) {
    double d2 = 0.0;
    for (int k = 0; k < 3; ++k) d2 += (cam->eye[k] - cam->look_at[k]) * (cam->eye[k] - cam->look_at[k]);
    return 1e-4 * std::sqrt(d2);
  }
  if (const auto* w = std::get_if<Window2D>(&view)) return 1e-4 * w->width;
  return 1e-4 * std::get<SliceFrame>(view).width;
}

namespace {

IterationParams parse_iteration(const json& doc, const std::string& path, int dimension) {
  IterationParams p;
  p.dimension = dimension;
  Fields f(doc, path);
  p.fold_halfwidth = f.number("fold_halfwidth", 1.0);
  if (const json* s = f.get("outer_shape")) p.outer_shape = shape_from_json(*s, f.at("outer_shape"));
  if (const json* s = f.get("min_shape")) p.min_shape = shape_from_json(*s, f.at("min_shape"));
  if (const json* s = f.get("scale_mode")) {
    Fields m(*s, f.at("scale_mode"));
    const std::string kind = as_string(m.require("kind"), m.at("kind"));
    if (kind == "ratio") {
      p.scale_mode = RatioScale{};
    } else if (kind == "constant") {
      p.scale_mode = ConstantScale{as_number(m.require("factor"), m.at("factor"))};
    } else {
      parse_error(m.at("kind"), "expected 'ratio' or 'constant', found '" + kind + "'");
    }
    m.finish();
  }
  p.scale = f.number("scale", 2.0);
  if (const json* s = f.get("offset")) {
    Fields m(*s, f.at("offset"));
    const std::string mode = as_string(m.require("mode"), m.at("mode"));
    if (mode == "mandelbox") {
      p.offset = MandelboxOffset{};
    } else if (mode == "julibox") {
      p.offset = JuliboxOffset{as_vec(m.require("j"), m.at("j"))};
    } else {
      parse_error(m.at("mode"), "expected 'mandelbox' or 'julibox', found '" + mode + "'");
    }
    m.finish();
  }
  p.escape_distance = f.number("escape_distance", 1024.0);
  p.max_iterations = f.integer("max_iterations", 100);
  f.finish();
  return p;
}

ViewSpec default_view(int dimension) {
  if (dimension == 2) return Window2D{};
  Camera3D cam;
  cam.eye = {4.0, 3.0, 7.0};
  if (dimension == 4) cam.w_slice = 0.0;
  return cam;
}

ViewSpec parse_view(const json& doc, const std::string& path) {
  Fields f(doc, path);
  const std::string kind = as_string(f.require("kind"), f.at("kind"));
  ViewSpec out;
  if (kind == "window2d") {
    Window2D w;
    if (const json* c = f.get("center")) w.center = as_fixed<2>(*c, f.at("center"));
    w.width = f.number("width", w.width);
    w.rotation = f.number("rotation", 0.0);
    out = w;
  } else if (kind == "slice") {
    SliceFrame s;
    s.origin = as_vec(f.require("origin"), f.at("origin"));
    s.basis_u = as_vec(f.require("basis_u"), f.at("basis_u"));
    s.basis_v = as_vec(f.require("basis_v"), f.at("basis_v"));
    s.width = f.number("width", s.width);
    out = s;
  } else if (kind == "camera3d") {
    Camera3D c;
    if (const json* v = f.get("eye")) c.eye = as_fixed<3>(*v, f.at("eye"));
    if (const json* v = f.get("look_at")) c.look_at = as_fixed<3>(*v, f.at("look_at"));
    if (const json* v = f.get("up")) c.up = as_fixed<3>(*v, f.at("up"));
    c.vertical_fov = f.number("vertical_fov", c.vertical_fov);
    if (const json* v = f.get("w_slice"); v && !v->is_null()) c.w_slice = as_number(*v, f.at("w_slice"));
    out = c;
  } else {
    parse_error(f.at("kind"), "expected 'window2d', 'slice' or 'camera3d', found '" + kind + "'");
  }
  f.finish();
  return out;
}

Rgb parse_rgb(const json& doc, const std::string& path) { return as_fixed<3>(doc, path); }

Palette parse_palette(const json& doc, const std::string& path) {
  Palette p;
  Fields f(doc, path);
  if (const json* v = f.get("background")) p.background = parse_rgb(*v, f.at("background"));
  p.w_origin = f.number("w_origin", p.w_origin);
  p.w_axis = f.number("w_axis", p.w_axis);
  p.gamma = f.number("gamma", p.gamma);
  if (const json* v = f.get("colors")) {
    const std::string cpath = f.at("colors");
    if (!v->is_array() || v->size() != 3) parse_error(cpath, "expected an array of exactly 3 colors");
    for (std::size_t i = 0; i < 3; ++i) p.colors[i] = parse_rgb((*v)[i], index(cpath, i));
  }
  f.finish();
  return p;
}

void check_rgb(const Rgb& c, const std::string& path) {
  for (std::size_t k = 0; k < 3; ++k) {
    if (!(c[k] >= 0.0 && c[k] <= 1.0)) invalid(index(path, k), "color channels must lie in [0, 1]");
  }
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

SceneConfig scene_from_json(const json& doc, const std::string& root) {
  SceneConfig s;
  Fields f(doc, root);
  s.schema_version = as_int(f.require("schema_version"), f.at("schema_version"));
  if (s.schema_version != 1) {
    parse_error(f.at("schema_version"), "unsupported schema version " + std::to_string(s.schema_version) + " (expected 1)");
  }
  const int dimension = as_int(f.require("dimension"), f.at("dimension"));
  if (dimension < 2 || dimension > 4) invalid(f.at("dimension"), "must be 2, 3 or 4");

  if (const json* it = f.get("iteration")) {
    s.iteration = parse_iteration(*it, f.at("iteration"), dimension);
  } else {
    s.iteration.dimension = dimension;
  }
  const json* view = f.get("view");
  s.view = view ? parse_view(*view, f.at("view")) : default_view(dimension);

  if (const json* img = f.get("image")) {
    Fields g(*img, f.at("image"));
    s.width = g.integer("width", s.width);
    s.height = g.integer("height", s.height);
    g.finish();
  }
  if (const json* pal = f.get("palette")) s.palette = parse_palette(*pal, f.at("palette"));

  s.renderer = std::holds_alternative<Camera3D>(s.view) ? RendererKind::kRaymarch : RendererKind::kSampled;
  s.tuning.hit_epsilon = default_hit_epsilon(s.view);
  if (const json* r = f.get("renderer")) {
    Fields g(*r, f.at("renderer"));
    if (const json* k = g.get("kind")) {
      const std::string kind = as_string(*k, g.at("kind"));
      if (kind == "sampled") {
        s.renderer = RendererKind::kSampled;
      } else if (kind == "raymarch") {
        s.renderer = RendererKind::kRaymarch;
      } else {
        parse_error(g.at("kind"), "expected 'sampled' or 'raymarch', found '" + kind + "'");
      }
    }
    s.tuning.fudge = g.number("fudge", s.tuning.fudge);
    s.tuning.hit_epsilon = g.number("hit_epsilon", s.tuning.hit_epsilon);
    s.tuning.max_steps = g.integer("max_steps", s.tuning.max_steps);
    s.tuning.max_distance = g.number("max_distance", s.tuning.max_distance);
    if (const json* ss = g.get("supersample")) {
      if (!ss->is_boolean()) parse_error(g.at("supersample"), std::string("expected a boolean, found ") + type_name(*ss));
      s.tuning.supersample = ss->get<bool>();
    }
    g.finish();
  }
  if (const json* t = f.get("threads")) {
    if (t->is_string()) {
      if (t->get<std::string>() != "auto") parse_error(f.at("threads"), "expected a positive integer or \"auto\"");
    } else {
      s.threads = as_int(*t, f.at("threads"));
    }
  }
  s.tile_size = f.integer("tile_size", s.tile_size);
  f.finish();

  try {
    validate_scene(s);
  } catch (const SceneError& e) {
    if (root.empty() || e.path().empty()) throw;
    throw SceneError(e.kind(), join(root, e.path()), e.message());
  }
  return s;
}

SceneConfig parse_scene(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    parse_error("", std::string("malformed document: ") + e.what());
  }
  return scene_from_json(doc);
}

void validate_scene(const SceneConfig& s) {
  if (s.schema_version != 1) invalid("schema_version", "unsupported schema version");
  const int n = s.iteration.dimension;
  if (auto d = validate_params(s.iteration)) invalid(join("iteration", d->path), d->message);

  if (const auto* w = std::get_if<Window2D>(&s.view)) {
    if (n != 2) invalid("view.kind", "window2d views need a 2D scene, scene is " + std::to_string(n) + "D");
    if (!finite_positive(w->width)) invalid("view.width", "must be a finite number > 0");
    if (!std::isfinite(w->center[0]) || !std::isfinite(w->center[1])) invalid("view.center", "must be finite");
    if (!std::isfinite(w->rotation)) invalid("view.rotation", "must be finite");
  } else if (const auto* f = std::get_if<SliceFrame>(&s.view)) {
    if (n < 3) invalid("view.kind", "slice views need a 3D or 4D scene");
    const std::pair<const Vec*, const char*> vs[] = {
        {&f->origin, "view.origin"}, {&f->basis_u, "view.basis_u"}, {&f->basis_v, "view.basis_v"}};
    for (const auto& [v, path] : vs) {
      if (v->dim() != n) invalid(path, "has " + std::to_string(v->dim()) + " components, scene is " + std::to_string(n) + "D");
      if (!v->is_finite()) invalid(path, "must be finite");
    }
    if (std::abs(f->basis_u.norm() - 1.0) > 1e-9) invalid("view.basis_u", "must be unit length");
    if (std::abs(f->basis_v.norm() - 1.0) > 1e-9) invalid("view.basis_v", "must be unit length");
    if (std::abs(dot(f->basis_u, f->basis_v)) > 1e-9) invalid("view.basis_v", "must be orthogonal to basis_u");
    if (!finite_positive(f->width)) invalid("view.width", "must be a finite number > 0");
  } else {
    const auto& c = std::get<Camera3D>(s.view);
    if (n < 3) invalid("view.kind", "camera3d views need a 3D or 4D scene");
    for (int k = 0; k < 3; ++k) {
      if (!std::isfinite(c.eye[k])) invalid("view.eye", "must be finite");
      if (!std::isfinite(c.look_at[k])) invalid("view.look_at", "must be finite");
      if (!std::isfinite(c.up[k])) invalid("view.up", "must be finite");
    }
    if (!(c.vertical_fov > 0.0 && c.vertical_fov < std::numbers::pi)) invalid("view.vertical_fov", "must lie in (0, pi)");
    const Vec forward = Vec{c.look_at[0], c.look_at[1], c.look_at[2]} - Vec{c.eye[0], c.eye[1], c.eye[2]};
    if (forward.norm() == 0.0) invalid("view.look_at", "must differ from eye");
    const Vec up{c.up[0], c.up[1], c.up[2]};
    if (cross(forward, up).norm() <= 1e-12 * forward.norm() * up.norm()) {
      invalid("view.up", "must be nonzero and not parallel to the viewing direction");
    }
    if (n == 4 && !c.w_slice) invalid("view.w_slice", "required for 4D scenes");
    if (n == 3 && c.w_slice) invalid("view.w_slice", "only allowed for 4D scenes");
    if (c.w_slice && !std::isfinite(*c.w_slice)) invalid("view.w_slice", "must be finite");
  }

  const bool camera = std::holds_alternative<Camera3D>(s.view);
  if (s.renderer == RendererKind::kRaymarch && !camera) invalid("renderer.kind", "raymarch needs a camera3d view");
  if (s.renderer == RendererKind::kSampled && camera) invalid("renderer.kind", "sampled needs a window2d or slice view");

  if (s.width < 1) invalid("image.width", "must be >= 1");
  if (s.height < 1) invalid("image.height", "must be >= 1");

  check_rgb(s.palette.background, "palette.background");
  for (std::size_t i = 0; i < 3; ++i) check_rgb(s.palette.colors[i], index("palette.colors", i));
  if (!(std::isfinite(s.palette.w_origin) && s.palette.w_origin >= 0.0)) invalid("palette.w_origin", "must be >= 0");
  if (!(std::isfinite(s.palette.w_axis) && s.palette.w_axis >= 0.0)) invalid("palette.w_axis", "must be >= 0");
  if (!finite_positive(s.palette.gamma)) invalid("palette.gamma", "must be > 0");

  if (!(finite_positive(s.tuning.fudge) && s.tuning.fudge <= 1.0)) invalid("renderer.fudge", "must lie in (0, 1]");
  if (!finite_positive(s.tuning.hit_epsilon)) invalid("renderer.hit_epsilon", "must be > 0");
  if (s.tuning.max_steps < 1) invalid("renderer.max_steps", "must be >= 1");
  if (!finite_positive(s.tuning.max_distance)) invalid("renderer.max_distance", "must be > 0");

  if (s.threads && *s.threads < 1) invalid("threads", "must be a positive integer or \"auto\"");
  if (s.tile_size < 1) invalid("tile_size", "must be >= 1");
}

json scene_to_json(const SceneConfig& s) {
  json it;
  it["fold_halfwidth"] = s.iteration.fold_halfwidth;
  it["outer_shape"] = shape_to_json(s.iteration.outer_shape);
  it["min_shape"] = shape_to_json(s.iteration.min_shape);
  if (const auto* c = std::get_if<ConstantScale>(&s.iteration.scale_mode)) {
    it["scale_mode"] = {{"kind", "constant"}, {"factor", c->factor}};
  } else {
    it["scale_mode"] = {{"kind", "ratio"}};
  }
  it["scale"] = s.iteration.scale;
  if (const auto* j = std::get_if<JuliboxOffset>(&s.iteration.offset)) {
    it["offset"] = {{"mode", "julibox"}, {"j", std::vector<double>(j->j.components().begin(), j->j.components().end())}};
  } else {
    it["offset"] = {{"mode", "mandelbox"}};
  }
  it["escape_distance"] = s.iteration.escape_distance;
  it["max_iterations"] = s.iteration.max_iterations;

  auto vec = [](const Vec& v) { return std::vector<double>(v.components().begin(), v.components().end()); };
  json view;
  if (const auto* w = std::get_if<Window2D>(&s.view)) {
    view = {{"kind", "window2d"}, {"center", w->center}, {"width", w->width}, {"rotation", w->rotation}};
  } else if (const auto* f = std::get_if<SliceFrame>(&s.view)) {
    view = {{"kind", "slice"},
            {"origin", vec(f->origin)},
            {"basis_u", vec(f->basis_u)},
            {"basis_v", vec(f->basis_v)},
            {"width", f->width}};
  } else {
    const auto& c = std::get<Camera3D>(s.view);
    view = {{"kind", "camera3d"}, {"eye", c.eye}, {"look_at", c.look_at}, {"up", c.up}, {"vertical_fov", c.vertical_fov}};
    if (c.w_slice) view["w_slice"] = *c.w_slice;
  }

  json doc;
  doc["schema_version"] = s.schema_version;
  doc["dimension"] = s.iteration.dimension;
  doc["iteration"] = it;
  doc["view"] = view;
  doc["image"] = {{"width", s.width}, {"height", s.height}};
  doc["palette"] = {{"background", s.palette.background},
                    {"w_origin", s.palette.w_origin},
                    {"w_axis", s.palette.w_axis},
                    {"gamma", s.palette.gamma},
                    {"colors", s.palette.colors}};
  doc["renderer"] = {{"kind", s.renderer == RendererKind::kRaymarch ? "raymarch" : "sampled"},
                     {"fudge", s.tuning.fudge},
                     {"hit_epsilon", s.tuning.hit_epsilon},
                     {"max_steps", s.tuning.max_steps},
                     {"max_distance", s.tuning.max_distance},
                     {"supersample", s.tuning.supersample}};
  if (s.threads) {
    doc["threads"] = *s.threads;
  } else {
    doc["threads"] = "auto";
  }
  doc["tile_size"] = s.tile_size;
  return doc;
}

std::string dump_scene(const SceneConfig& scene) { return scene_to_json(scene).dump(2); }

std::string scene_hash(const SceneConfig& scene) {
  const std::string text = scene_to_json(scene).dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace shapebox
