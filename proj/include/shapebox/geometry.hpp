#pragma once

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "shapebox/vec.hpp"

namespace shapebox {

/// Points closer to the origin than this are left alone by every inversion.
inline constexpr double kOriginEpsilon = 1e-12;

/// Maximum nesting depth accepted for shape expression trees.
inline constexpr int kMaxShapeDepth = 32;

/// Orthogonal n×n matrix composed once from plane-rotation angles.
///
/// Angle conventions, applied to column vectors in list order:
///   n=2: one angle in the xy plane.
///   n=3: angles about x, then y, then z (planes yz, zx, xy).
///   n=4: six angles for the planes xy, xz, xw, yz, yw, zw.
/// A positive angle in plane (a, b) turns axis a towards axis b.
class Rotation {
 public:
  Rotation() = default;
  Rotation(int dim, std::span<const double> angles);

  static Rotation identity(int dim);
  static int angle_count(int dim);

  int dim() const { return dim_; }
  const std::vector<double>& angles() const { return angles_; }
  double entry(int row, int col) const { return m_[row][col]; }

  Vec apply(const Vec& v) const;
  Vec apply_inverse(const Vec& v) const;

  friend bool operator==(const Rotation& a, const Rotation& b) { return a.dim_ == b.dim_ && a.angles_ == b.angles_; }

 private:
  int dim_ = 0;
  std::vector<double> angles_;
  std::array<std::array<double, kMaxDim>, kMaxDim> m_{};
};

/// Centered star shape described by its radial boundary-distance function.
///
/// Shapes are immutable expression trees; copies share nodes. Every node is
/// centered on the origin and every ray from the origin crosses its boundary
/// exactly once.
class Shape {
 public:
  struct Node;

  static Shape ball(double radius);
  static Shape box(double half_side);
  static Shape cross_polytope(double radius);
  static Shape hexagon(double circumradius);
  static Shape fg_squircle(double radius, double squareness);
  static Shape superellipsoid(double exponent, std::array<double, 3> semi_axes);
  static Shape union_of(Shape a, Shape b);
  static Shape intersection_of(Shape a, Shape b);
  static Shape blend(Shape a, Shape b, double t);
  static Shape rotated(Shape child, Rotation rotation);

  /// Boundary distance along a unit direction. No precondition checks; use
  /// radial_distance() at API boundaries.
  double radius_along(const Vec& unit) const;

  const Node& node() const { return *node_; }
  std::string kind() const;

  friend bool operator==(const Shape& a, const Shape& b);

 private:
  explicit Shape(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

namespace shapes {

struct Ball {
  double radius;
  bool operator==(const Ball&) const = default;
};
struct Box {
  double half_side;
  bool operator==(const Box&) const = default;
};
struct CrossPolytope {
  double radius;
  bool operator==(const CrossPolytope&) const = default;
};
/// Regular hexagon with a vertex on +x. Planar only.
struct Hexagon {
  double circumradius;
  bool operator==(const Hexagon&) const = default;
};
/// Fernandez-Guasti squircle x² + y² − (s²/r²)x²y² = r². Planar only.
struct FgSquircle {
  double radius;
  double squareness;
  bool operator==(const FgSquircle&) const = default;
};
/// |x/A|^m + |y/B|^m + |z/C|^m = 1. Three-dimensional only.
struct Superellipsoid {
  double exponent;
  std::array<double, 3> semi_axes;
  bool operator==(const Superellipsoid&) const = default;
};
struct Union {
  Shape a, b;
  bool operator==(const Union&) const = default;
};
struct Intersection {
  Shape a, b;
  bool operator==(const Intersection&) const = default;
};
/// Radial interpolation (1−t)·ρa + t·ρb.
struct Blend {
  Shape a, b;
  double t;
  bool operator==(const Blend&) const = default;
};
struct Rotated {
  Shape child;
  Rotation rotation;
  bool operator==(const Rotated&) const = default;
};

}  // namespace shapes

struct Shape::Node {
  std::variant<shapes::Ball, shapes::Box, shapes::CrossPolytope, shapes::Hexagon, shapes::FgSquircle,
               shapes::Superellipsoid, shapes::Union, shapes::Intersection, shapes::Blend, shapes::Rotated>
      value;
};

/// Checked ρ(u). Throws ContractViolation unless ‖u‖ = 1 within 1e-9.
double radial_distance(const Shape& shape, const Vec& direction);

/// ‖p‖ ≤ ρ(p/‖p‖). The origin is inside every shape.
bool contains(const Shape& shape, const Vec& p);

/// p·ρ(u)²/‖p‖², or p itself within kOriginEpsilon of the origin.
Vec invert_in_shape(const Shape& shape, const Vec& p);

struct ShapeDiagnostic {
  std::string path;  // relative to the shape root, e.g. "children[1].radius"
  std::string message;
};

/// Checks dimension compatibility, parameter ranges, planar/solid-only leaves
/// and tree depth. Returns the first offending node.
std::optional<ShapeDiagnostic> validate_shape(const Shape& shape, int dimension);

}  // namespace shapebox
