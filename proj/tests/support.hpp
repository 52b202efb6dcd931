#pragma once

// Shared generators for the property-style tests.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "shapebox/geometry.hpp"

namespace shapebox::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20260914ull);
  return engine;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline Vec random_unit(int dim) {
  std::normal_distribution<double> normal;
  for (;;) {
    Vec v(dim);
    for (int k = 0; k < dim; ++k) v[k] = normal(rng());
    const double n = v.norm();
    if (n > 1e-6) return v * (1.0 / n);
  }
}

/// Random direction scaled to a log-uniform radius in [lo, hi].
inline Vec random_point(int dim, double lo, double hi) {
  return random_unit(dim) * std::exp(uniform(std::log(lo), std::log(hi)));
}

inline Rotation random_rotation(int dim) {
  std::vector<double> angles(static_cast<std::size_t>(Rotation::angle_count(dim)));
  for (auto& a : angles) a = uniform(-3.14159, 3.14159);
  return Rotation(dim, angles);
}

struct NamedShape {
  std::string name;
  Shape shape;
  int dim;
};

/// The shape catalog with randomized parameters, in every dimension a leaf supports.
inline std::vector<NamedShape> shape_zoo() {
  std::vector<NamedShape> out;
  for (int n = 2; n <= 4; ++n) {
    const std::string d = std::to_string(n) + "D";
    out.push_back({"ball " + d, Shape::ball(uniform(0.3, 3.0)), n});
    out.push_back({"box " + d, Shape::box(uniform(0.3, 3.0)), n});
    out.push_back({"cross_polytope " + d, Shape::cross_polytope(uniform(0.3, 3.0)), n});
    out.push_back({"union(ball, box) " + d, Shape::union_of(Shape::ball(uniform(0.5, 2.0)), Shape::box(uniform(0.5, 2.0))), n});
    out.push_back({"intersection(ball, box) " + d,
                   Shape::intersection_of(Shape::ball(uniform(0.5, 2.0)), Shape::box(uniform(0.5, 2.0))), n});
    out.push_back({"blend(ball, box, 0.37) " + d,
                   Shape::blend(Shape::ball(uniform(0.5, 2.0)), Shape::box(uniform(0.5, 2.0)), 0.37), n});
    out.push_back({"rotated(box) " + d, Shape::rotated(Shape::box(uniform(0.5, 2.0)), random_rotation(n)), n});
  }
  out.push_back({"hexagon 2D", Shape::hexagon(uniform(0.3, 3.0)), 2});
  out.push_back({"fg_squircle 2D", Shape::fg_squircle(uniform(0.3, 3.0), uniform(0.0, 1.0)), 2});
  out.push_back({"fg_squircle s=1 2D", Shape::fg_squircle(uniform(0.3, 3.0), 1.0), 2});
  out.push_back({"superellipsoid 3D",
                 Shape::superellipsoid(uniform(1.0, 8.0), {uniform(0.3, 3.0), uniform(0.3, 3.0), uniform(0.3, 3.0)}), 3});
  return out;
}

}  // namespace shapebox::testing
