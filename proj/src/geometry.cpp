#include "shapebox/geometry.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace shapebox {

namespace {

using Plane = std::pair<int, int>;

std::vector<Plane> rotation_planes(int dim) {
  switch (dim) {
    case 2:
      return {{0, 1}};
    case 3:
      return {{1, 2}, {2, 0}, {0, 1}};
    case 4:
      return {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    default:
      throw ContractViolation("rotations are defined for dimensions 2, 3 and 4 only");
  }
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

int Rotation::angle_count(int dim) { return static_cast<int>(rotation_planes(dim).size()); }

Rotation Rotation::identity(int dim) {
  std::vector<double> zeros(static_cast<std::size_t>(angle_count(dim)), 0.0);
  return Rotation(dim, zeros);
}

Rotation::Rotation(int dim, std::span<const double> angles) : dim_(dim), angles_(angles.begin(), angles.end()) {
  const auto planes = rotation_planes(dim);
  if (angles.size() != planes.size()) {
    throw ContractViolation("a " + std::to_string(dim) + "D rotation takes " + std::to_string(planes.size()) +
                            " angles, got " + std::to_string(angles.size()));
  }
  for (int r = 0; r < kMaxDim; ++r) m_[r][r] = 1.0;
  for (std::size_t i = 0; i < planes.size(); ++i) {
    const auto [a, b] = planes[i];
    const double c = std::cos(angles[i]);
    const double s = std::sin(angles[i]);
    // m_ <- G · m_, where G only touches rows a and b.
    for (int col = 0; col < dim; ++col) {
      const double ra = m_[a][col];
      const double rb = m_[b][col];
      m_[a][col] = c * ra - s * rb;
      m_[b][col] = s * ra + c * rb;
    }
  }
}

Vec Rotation::apply(const Vec& v) const {
  Vec out(dim_);
  for (int r = 0; r < dim_; ++r) {
    double s = 0.0;
    for (int c = 0; c < dim_; ++c) s += m_[r][c] * v[c];
    out[r] = s;
  }
  return out;
}

Vec Rotation::apply_inverse(const Vec& v) const {
  Vec out(dim_);
  for (int c = 0; c < dim_; ++c) {
    double s = 0.0;
    for (int r = 0; r < dim_; ++r) s += m_[r][c] * v[r];
    out[c] = s;
  }
  return out;
}

// -- Shape construction ------------------------------------------------------

Shape Shape::ball(double radius) { return Shape(std::make_shared<const Node>(Node{shapes::Ball{radius}})); }
Shape Shape::box(double half_side) { return Shape(std::make_shared<const Node>(Node{shapes::Box{half_side}})); }
Shape Shape::cross_polytope(double radius) {
  return Shape(std::make_shared<const Node>(Node{shapes::CrossPolytope{radius}}));
}
Shape Shape::hexagon(double circumradius) {
  return Shape(std::make_shared<const Node>(Node{shapes::Hexagon{circumradius}}));
}
Shape Shape::fg_squircle(double radius, double squareness) {
  return Shape(std::make_shared<const Node>(Node{shapes::FgSquircle{radius, squareness}}));
}
Shape Shape::superellipsoid(double exponent, std::array<double, 3> semi_axes) {
  return Shape(std::make_shared<const Node>(Node{shapes::Superellipsoid{exponent, semi_axes}}));
}
Shape Shape::union_of(Shape a, Shape b) {
  return Shape(std::make_shared<const Node>(Node{shapes::Union{std::move(a), std::move(b)}}));
}
Shape Shape::intersection_of(Shape a, Shape b) {
  return Shape(std::make_shared<const Node>(Node{shapes::Intersection{std::move(a), std::move(b)}}));
}
Shape Shape::blend(Shape a, Shape b, double t) {
  return Shape(std::make_shared<const Node>(Node{shapes::Blend{std::move(a), std::move(b), t}}));
}
Shape Shape::rotated(Shape child, Rotation rotation) {
  return Shape(std::make_shared<const Node>(Node{shapes::Rotated{std::move(child), std::move(rotation)}}));
}

bool operator==(const Shape& a, const Shape& b) {
  if (a.node_ == b.node_) return true;
  return a.node_->value == b.node_->value;
}

std::string Shape::kind() const {
  return std::visit(overloaded{
                        [](const shapes::Ball&) { return std::string("ball"); },
                        [](const shapes::Box&) { return std::string("box"); },
                        [](const shapes::CrossPolytope&) { return std::string("cross_polytope"); },
                        [](const shapes::Hexagon&) { return std::string("hexagon"); },
                        [](const shapes::FgSquircle&) { return std::string("fg_squircle"); },
                        [](const shapes::Superellipsoid&) { return std::string("superellipsoid"); },
                        [](const shapes::Union&) { return std::string("union"); },
                        [](const shapes::Intersection&) { return std::string("intersection"); },
                        [](const shapes::Blend&) { return std::string("blend"); },
                        [](const shapes::Rotated&) { return std::string("rotated"); },
                    },
                    node_->value);
}

// -- Radial functions ----------------------------------------------------------

double Shape::radius_along(const Vec& u) const {
  const int n = u.dim();
  return std::visit(
      overloaded{
          [](const shapes::Ball& s) { return s.radius; },
          [&](const shapes::Box& s) {
            double m = 0.0;
            for (int k = 0; k < n; ++k) m = std::max(m, std::abs(u[k]));
            return s.half_side / m;
          },
          [&](const shapes::CrossPolytope& s) {
            std::array<double, kMaxDim> a{};
            for (int k = 0; k < n; ++k) a[k] = std::abs(u[k]);
            return s.radius / order_free_sum(a, n);
          },
          [&](const shapes::Hexagon& s) {
            constexpr double sector = std::numbers::pi / 3.0;
            constexpr double half = std::numbers::pi / 6.0;
            // vertex on +x: angle within the sector measured from that vertex
            double a = std::fmod(std::atan2(u[1], u[0]), sector);
            if (a < 0.0) a += sector;
            return s.circumradius * std::cos(half) / std::cos(a - half);
          },
          [&](const shapes::FgSquircle& s) {
            // Smaller root of a·T² − T + r² = 0 in T = t², a = s²ux²uy²/r²,
            // written in the cancellation-free form 2r² / (1 + √disc).
            const double q = s.squareness * u[0] * u[1];
            const double disc = std::max(0.0, 1.0 - 4.0 * q * q);
            const double r2 = s.radius * s.radius;
            return std::sqrt(2.0 * r2 / (1.0 + std::sqrt(disc)));
          },
          [&](const shapes::Superellipsoid& s) {
            const double m = s.exponent;
            double sum = 0.0;
            for (int k = 0; k < 3; ++k) sum += std::pow(std::abs(u[k] / s.semi_axes[k]), m);
            return std::pow(sum, -1.0 / m);
          },
          [&](const shapes::Union& s) { return std::max(s.a.radius_along(u), s.b.radius_along(u)); },
          [&](const shapes::Intersection& s) { return std::min(s.a.radius_along(u), s.b.radius_along(u)); },
          [&](const shapes::Blend& s) { return (1.0 - s.t) * s.a.radius_along(u) + s.t * s.b.radius_along(u); },
          [&](const shapes::Rotated& s) { return s.child.radius_along(s.rotation.apply_inverse(u)); },
      },
      node_->value);
}

double radial_distance(const Shape& shape, const Vec& direction) {
  if (!direction.is_finite()) throw ContractViolation("radial_distance: direction is not finite");
  const double len = direction.norm();
  if (len == 0.0) throw ContractViolation("radial_distance: zero direction");
  if (std::abs(len - 1.0) > 1e-9) {
    throw ContractViolation("radial_distance: direction is not unit length (norm " + std::to_string(len) + ")");
  }
  return shape.radius_along(direction);
}

bool contains(const Shape& shape, const Vec& p) {
  const double r = p.norm();
  if (r < kOriginEpsilon) return true;
  return r <= shape.radius_along(p * (1.0 / r));
}

Vec invert_in_shape(const Shape& shape, const Vec& p) {
  const double r2 = p.norm_squared();
  const double r = std::sqrt(r2);
  if (r < kOriginEpsilon) return p;
  const double rho = shape.radius_along(p * (1.0 / r));
  return p * (rho * rho / r2);
}

// -- Validation ------------------------------------------------------------------

namespace {

std::optional<ShapeDiagnostic> fail(const std::string& path, const std::string& field, std::string message) {
  std::string full = path;
  if (!field.empty()) full += full.empty() ? field : "." + field;
  return ShapeDiagnostic{full, std::move(message)};
}

std::string child_path(const std::string& path, int index) {
  return (path.empty() ? std::string("children") : path + ".children") + "[" + std::to_string(index) + "]";
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }
bool unit_interval(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

std::optional<ShapeDiagnostic> validate_node(const Shape& shape, int n, const std::string& path, int depth) {
  if (depth > kMaxShapeDepth) {
    return fail(path, "", "shape tree deeper than " + std::to_string(kMaxShapeDepth) + " levels");
  }
  auto children = [&](const Shape& a, const Shape& b) -> std::optional<ShapeDiagnostic> {
    if (auto d = validate_node(a, n, child_path(path, 0), depth + 1)) return d;
    return validate_node(b, n, child_path(path, 1), depth + 1);
  };
  auto where = [&] { return path.empty() ? std::string("shape") : path; };
  return std::visit(
      overloaded{
          [&](const shapes::Ball& s) -> std::optional<ShapeDiagnostic> {
            if (!positive(s.radius)) return fail(path, "radius", "must be a finite number > 0");
            return std::nullopt;
          },
          [&](const shapes::Box& s) -> std::optional<ShapeDiagnostic> {
            if (!positive(s.half_side)) return fail(path, "half_side", "must be a finite number > 0");
            return std::nullopt;
          },
          [&](const shapes::CrossPolytope& s) -> std::optional<ShapeDiagnostic> {
            if (!positive(s.radius)) return fail(path, "radius", "must be a finite number > 0");
            return std::nullopt;
          },
          [&](const shapes::Hexagon& s) -> std::optional<ShapeDiagnostic> {
            if (n != 2) return fail(path, "", where() + ": hexagon is only defined in 2D, scene is " + std::to_string(n) + "D");
            if (!positive(s.circumradius)) return fail(path, "circumradius", "must be a finite number > 0");
            return std::nullopt;
          },
          [&](const shapes::FgSquircle& s) -> std::optional<ShapeDiagnostic> {
            if (n != 2) {
              return fail(path, "", where() + ": fg_squircle is only defined in 2D, scene is " + std::to_string(n) + "D");
            }
            if (!positive(s.radius)) return fail(path, "radius", "must be a finite number > 0");
            if (!unit_interval(s.squareness)) return fail(path, "squareness", "must lie in [0, 1]");
            return std::nullopt;
          },
          [&](const shapes::Superellipsoid& s) -> std::optional<ShapeDiagnostic> {
            if (n != 3) {
              return fail(path, "", where() + ": superellipsoid is only defined in 3D, scene is " + std::to_string(n) + "D");
            }
            if (!std::isfinite(s.exponent) || s.exponent < 1.0) return fail(path, "exponent", "must be a finite number >= 1");
            for (int k = 0; k < 3; ++k) {
              if (!positive(s.semi_axes[k])) {
                return fail(path, "semi_axes[" + std::to_string(k) + "]", "must be a finite number > 0");
              }
            }
            return std::nullopt;
          },
          [&](const shapes::Union& s) { return children(s.a, s.b); },
          [&](const shapes::Intersection& s) { return children(s.a, s.b); },
          [&](const shapes::Blend& s) -> std::optional<ShapeDiagnostic> {
            if (!unit_interval(s.t)) return fail(path, "t", "must lie in [0, 1]");
            return children(s.a, s.b);
          },
          [&](const shapes::Rotated& s) -> std::optional<ShapeDiagnostic> {
            if (s.rotation.dim() != n) {
              return fail(path, "angles",
                          "rotation is " + std::to_string(s.rotation.dim()) + "D, scene is " + std::to_string(n) + "D");
            }
            for (double a : s.rotation.angles()) {
              if (!std::isfinite(a)) return fail(path, "angles", "angles must be finite");
            }
            return validate_node(s.child, n, child_path(path, 0), depth + 1);
          },
      },
      shape.node().value);
}

}  // namespace

std::optional<ShapeDiagnostic> validate_shape(const Shape& shape, int dimension) {
  if (dimension < 2 || dimension > 4) return ShapeDiagnostic{"", "dimension must be 2, 3 or 4"};
  return validate_node(shape, dimension, "", 1);
}

}  // namespace shapebox
