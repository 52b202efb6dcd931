#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "shapebox/dynamics.hpp"
#include "support.hpp"

using namespace shapebox;
using namespace shapebox::testing;

namespace {

IterationParams classic2d() {
  IterationParams p;
  p.dimension = 2;
  return p;
}

bool near(const Vec& a, const Vec& b, double tol) { return (a - b).norm() <= tol; }

}  // namespace

TEST_CASE("boxfold reflects each coordinate at most once") {
  CHECK(boxfold(Vec{-3.0, 0.0, 4.0}, 1.0) == Vec{1.0, 0.0, -2.0});
  CHECK(boxfold(Vec{3.0, -5.0}, 2.0) == Vec{1.0, 1.0});
  CHECK(boxfold(Vec{10.0, 0.5}, 1.0) == Vec{-8.0, 0.5});
  CHECK(boxfold(Vec{1.0, -1.0, 0.0, 0.25}, 1.0) == Vec{1.0, -1.0, 0.0, 0.25});
}

TEST_CASE("spherefold branches") {
  CHECK(spherefold(Vec{2.0, 0.0, 0.0}, 1.0, 0.5) == Vec{2.0, 0.0, 0.0});
  CHECK(near(spherefold(Vec{0.8, 0.0, 0.0}, 1.0, 0.5), Vec{1.25, 0.0, 0.0}, 1e-15));
  CHECK(near(spherefold(Vec{0.3, 0.0, 0.0}, 1.0, 0.5), Vec{1.2, 0.0, 0.0}, 1e-15));
  CHECK(spherefold(Vec{3.0, 0.0}, 2.0, 0.5) == Vec{3.0, 0.0});
  CHECK(spherefold(Vec{1.0, 0.0}, 2.0, 0.5) == Vec{4.0, 0.0});
  CHECK(spherefold(Vec{0.25, 0.0}, 2.0, 0.5) == Vec{4.0, 0.0});
  CHECK(shapefold(Vec{1.0, 0.0}, Shape::ball(2.0), Shape::ball(0.5), RatioScale{}) == Vec{4.0, 0.0});
  CHECK_THROWS_AS(spherefold(Vec{0.3, 0.0}, 0.5, 0.5), ContractViolation);
  CHECK_THROWS_AS(spherefold(Vec{0.3, 0.0}, 1.0, 0.0), ContractViolation);
}

TEST_CASE("shapefold branches with a square outer shape") {
  const Shape sq = Shape::box(1.0);

  // inside the min ball: scaled by rho_outer^2 / rho_min^2 = 1.25 / 0.25
  FoldOutcome a = shapefold_detail(Vec{0.4, 0.2}, sq, Shape::ball(0.5), RatioScale{});
  CHECK(a.branch == FoldBranch::kMinScale);
  CHECK(a.factor == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(near(a.point, Vec{2.0, 1.0}, 1e-14));

  // between the shapes: inverted in the square
  FoldOutcome b = shapefold_detail(Vec{0.4, 0.2}, sq, Shape::ball(0.3), RatioScale{});
  CHECK(b.branch == FoldBranch::kInversion);
  CHECK(near(b.point, Vec{2.5, 1.25}, 1e-14));

  FoldOutcome c = shapefold_detail(Vec{2.0, 1.0}, sq, Shape::ball(0.5), RatioScale{});
  CHECK(c.branch == FoldBranch::kIdentity);
  CHECK(c.point == Vec{2.0, 1.0});

  FoldOutcome d = shapefold_detail(Vec{0.1, 0.1}, sq, Shape::ball(0.5), ConstantScale{3.0});
  CHECK(d.branch == FoldBranch::kMinScale);
  CHECK(d.point == Vec{0.1 * 3.0, 0.1 * 3.0});

  FoldOutcome o = shapefold_detail(Vec{0.0, 0.0}, sq, Shape::ball(0.5), RatioScale{});
  CHECK(o.branch == FoldBranch::kOrigin);
  CHECK(o.point == Vec{0.0, 0.0});
}

TEST_CASE("classic orbit from (10, 0) escapes at iteration 9") {
  // boxfold, identity fold, x2, +10 by hand: -6, 18, -22, 50, -86, 178, -342, 690, -1366
  const OrbitTrace t = trace(Vec{10.0, 0.0}, classic2d());
  const double xs[] = {-6, 18, -22, 50, -86, 178, -342, 690, -1366};
  REQUIRE(t.steps.size() == 9);
  for (std::size_t n = 0; n < 9; ++n) CHECK(t.steps[n].translated == Vec{xs[n], 0.0});
  CHECK(t.steps[0].boxfolded == Vec{-8.0, 0.0});
  CHECK(t.steps[0].branch == FoldBranch::kIdentity);
  CHECK(t.result.escaped);
  CHECK(t.result.escape_iteration == 9);
  CHECK(t.result.final_magnitude == 1366.0);
  CHECK(t.result.trap_origin == 6.0);
  CHECK(t.result.trap_axes == std::vector<double>{0.0, 6.0});
}

TEST_CASE("first iterate of a point inside the min ball") {
  // (0.2, 0) -> boxfold keeps it -> x4 -> x2 -> +seed = (1.8, 0)
  const OrbitTrace t = trace(Vec{0.2, 0.0}, [] {
    IterationParams p = classic2d();
    p.max_iterations = 1;
    return p;
  }());
  CHECK(t.steps[0].branch == FoldBranch::kMinScale);
  CHECK(near(t.steps[0].translated, Vec{1.8, 0.0}, 1e-15));
  CHECK_FALSE(t.result.escaped);
  CHECK(t.result.escape_iteration == 1);
}

TEST_CASE("the origin is a member and seeds outside the escape radius still take one step") {
  CHECK(membership(Vec{0.0, 0.0, 0.0}, IterationParams{}));
  const OrbitResult r = iterate(Vec{5000.0, 0.0}, classic2d());
  CHECK(r.escaped);
  CHECK(r.escape_iteration == 1);
}

TEST_CASE("escape test is strict") {
  IterationParams p = classic2d();
  p.escape_distance = 6.0;
  // first iterate of (10, 0) has magnitude exactly 6
  const OrbitResult r = iterate(Vec{10.0, 0.0}, p);
  CHECK(r.escape_iteration == 2);
}

TEST_CASE("shapefold with balls matches spherefold") {
  for (int n = 2; n <= 4; ++n) {
    for (int i = 0; i < 10000; ++i) {
      const double h = uniform(0.5, 3.0);
      const double l = h * uniform(0.05, 0.95);
      const Vec p = random_unit(n) * uniform(0.0, 1.5 * h);
      const Vec a = spherefold(p, h, l);
      const Vec b = shapefold(p, Shape::ball(h), Shape::ball(l), RatioScale{});
      for (int k = 0; k < n; ++k) REQUIRE(std::abs(a[k] - b[k]) <= 1e-12 * std::abs(a[k]));
    }
  }
}

TEST_CASE("steps commute with signed permutations for symmetric shapes") {
  IterationParams p;
  p.outer_shape = Shape::box(0.85);
  p.min_shape = Shape::ball(0.5);
  std::array<int, 3> perm{0, 1, 2};
  for (int i = 0; i < 500; ++i) {
    std::shuffle(perm.begin(), perm.end(), rng());
    const Vec signs{uniform(-1, 1) < 0 ? -1.0 : 1.0, uniform(-1, 1) < 0 ? -1.0 : 1.0, uniform(-1, 1) < 0 ? -1.0 : 1.0};
    auto act = [&](const Vec& v) {
      Vec out(3);
      for (int k = 0; k < 3; ++k) out[k] = signs[k] * v[perm[k]];
      return out;
    };
    const Vec x = random_point(3, 0.01, 3.0);
    const Vec seed = random_point(3, 0.01, 3.0);
    const Vec lhs = step(act(x), act(seed), p).translated;
    const Vec rhs = act(step(x, seed, p).translated);
    REQUIRE(near(lhs, rhs, 1e-12 * (1.0 + rhs.norm())));
  }
}

TEST_CASE("iteration is deterministic") {
  IterationParams p;
  p.outer_shape = Shape::superellipsoid(3.0, {0.9, 1.0, 1.1});
  for (int i = 0; i < 200; ++i) {
    const Vec x = random_point(3, 0.01, 4.0);
    REQUIRE(iterate(x, p) == iterate(x, p));
  }
}

TEST_CASE("a Julibox indexed at the seed reproduces the Mandelbox orbit") {
  for (int i = 0; i < 500; ++i) {
    IterationParams m;
    m.outer_shape = Shape::cross_polytope(1.3);
    const Vec x = random_point(3, 0.01, 4.0);
    IterationParams j = m;
    j.offset = JuliboxOffset{x};
    REQUIRE(iterate(x, m) == iterate(x, j));
  }
}

TEST_CASE("traps never increase and fold factors stay positive") {
  IterationParams p;
  p.outer_shape = Shape::union_of(Shape::ball(0.9), Shape::box(0.75));
  for (int i = 0; i < 200; ++i) {
    const Vec x = random_point(3, 0.01, 4.0);
    OrbitResult prev;
    for (int cap = 1; cap <= 20; ++cap) {
      p.max_iterations = cap;
      const OrbitResult r = iterate(x, p);
      if (cap > 1) {
        REQUIRE(r.trap_origin <= prev.trap_origin);
        for (int k = 0; k < 3; ++k) REQUIRE(r.trap_axes[k] <= prev.trap_axes[k]);
      }
      REQUIRE(r.trap_origin <= x.norm());
      prev = r;
      if (r.escaped) break;
    }
    for (const auto& s : trace(x, p).steps) REQUIRE(s.fold_factor > 0.0);
  }
}

TEST_CASE("distance estimate") {
  IterationParams p;
  p.max_iterations = 12;
  CHECK(estimate_distance(Vec{0.0, 0.0, 0.0}, p, 0.5) == 0.0);
  for (int i = 0; i < 200; ++i) {
    const Vec x = random_point(3, 0.05, 8.0);
    const double de = estimate_distance(x, p, 1.0);
    if (membership(x, p)) {
      REQUIRE(de == 0.0);
    } else {
      REQUIRE(de > 0.0);
      REQUIRE(estimate_distance(x, p, 0.25) == doctest::Approx(0.25 * de).epsilon(1e-14));
    }
  }
  // a single step from far away: dr = 1*1*2 + 1, P = 2*(2 - x0) + x0
  p.max_iterations = 50;
  const DerivativeOrbit d = iterate_with_derivative(Vec{3000.0, 0.0, 0.0}, p);
  CHECK(d.result.escape_iteration == 1);
  CHECK(d.derivative == 3.0);
  CHECK(estimate_distance(Vec{3000.0, 0.0, 0.0}, p, 1.0) == doctest::Approx(2996.0 / 3.0));
}

TEST_CASE("validate_params") {
  CHECK(!validate_params(IterationParams{}));
  IterationParams p;
  p.scale = 0.0;
  CHECK(validate_params(p)->path == "scale");
  p = {};
  p.outer_shape = Shape::union_of(Shape::ball(1.0), Shape::box(-1.0));
  CHECK(validate_params(p)->path == "outer_shape.children[1].half_side");
  p = {};
  p.offset = JuliboxOffset{Vec{1.0, 2.0}};
  CHECK(validate_params(p)->path == "offset.j");
  p = {};
  p.max_iterations = 0;
  CHECK(validate_params(p)->path == "max_iterations");
  p = {};
  p.scale_mode = ConstantScale{-1.0};
  CHECK(validate_params(p)->path == "scale_mode.factor");
}

TEST_CASE("nesting warnings") {
  CHECK(nesting_warnings(IterationParams{}).empty());
  IterationParams p;
  p.min_shape = Shape::box(0.9);
  CHECK(nesting_warnings(p).size() == 1);
}
