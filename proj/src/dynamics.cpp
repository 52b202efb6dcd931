#include "shapebox/dynamics.hpp"

#include <cmath>
#include <array>
#include <limits>
#include <random>

namespace shapebox {

std::string to_string(FoldBranch branch) {
  switch (branch) {
    case FoldBranch::kOrigin:
      return "origin";
    case FoldBranch::kMinScale:
      return "min-scale";
    case FoldBranch::kInversion:
      return "inversion";
    case FoldBranch::kIdentity:
      return "identity";
  }
  return "unknown";
}

std::optional<ParamDiagnostic> validate_params(const IterationParams& p) {
  if (p.dimension < 2 || p.dimension > 4) return ParamDiagnostic{"dimension", "must be 2, 3 or 4"};
  if (!std::isfinite(p.fold_halfwidth) || p.fold_halfwidth <= 0.0) {
    return ParamDiagnostic{"fold_halfwidth", "must be a finite number > 0"};
  }
  if (!std::isfinite(p.scale) || p.scale == 0.0) return ParamDiagnostic{"scale", "must be a finite nonzero number"};
  if (!std::isfinite(p.escape_distance) || p.escape_distance <= 0.0) {
    return ParamDiagnostic{"escape_distance", "must be a finite number > 0"};
  }
  if (p.max_iterations < 1) return ParamDiagnostic{"max_iterations", "must be >= 1"};
  if (const auto* c = std::get_if<ConstantScale>(&p.scale_mode)) {
    if (!std::isfinite(c->factor) || c->factor <= 0.0) {
      return ParamDiagnostic{"scale_mode.factor", "must be a finite number > 0"};
    }
  }
  auto shape_path = [](const std::string& root, const std::string& rel) { return rel.empty() ? root : root + "." + rel; };
  if (auto d = validate_shape(p.outer_shape, p.dimension)) {
    return ParamDiagnostic{shape_path("outer_shape", d->path), d->message};
  }
  if (auto d = validate_shape(p.min_shape, p.dimension)) {
    return ParamDiagnostic{shape_path("min_shape", d->path), d->message};
  }
  if (const auto* j = std::get_if<JuliboxOffset>(&p.offset)) {
    if (j->j.dim() != p.dimension) {
      return ParamDiagnostic{"offset.j", "has " + std::to_string(j->j.dim()) + " components, scene is " +
                                             std::to_string(p.dimension) + "D"};
    }
    if (!j->j.is_finite()) return ParamDiagnostic{"offset.j", "components must be finite"};
  }
  return std::nullopt;
}

std::vector<std::string> nesting_warnings(const IterationParams& p) {
  std::mt19937_64 rng(0x5eedb0u);
  std::normal_distribution<double> normal;
  int violations = 0;
  double worst = 0.0;
  for (int i = 0; i < 256; ++i) {
    Vec u(p.dimension);
    double len = 0.0;
    do {
      for (int k = 0; k < p.dimension; ++k) u[k] = normal(rng);
      len = u.norm();
    } while (len < 1e-6);
    u *= 1.0 / len;
    const double inner = p.min_shape.radius_along(u);
    const double outer = p.outer_shape.radius_along(u);
    if (inner >= outer) {
      ++violations;
      worst = std::max(worst, inner - outer);
    }
  }
  if (violations == 0) return {};
  return {"min_shape reaches or crosses outer_shape in " + std::to_string(violations) +
          " of 256 sampled directions (max overshoot " + std::to_string(worst) + ")"};
}

Vec boxfold(const Vec& p, double f) {
  Vec out = p;
  for (int k = 0; k < p.dim(); ++k) {
    if (p[k] > f) {
      out[k] = 2.0 * f - p[k];
    } else if (p[k] < -f) {
      out[k] = -2.0 * f - p[k];
    }
  }
  return out;
}

Vec spherefold(const Vec& p, double outer_radius, double min_radius) {
  if (!(min_radius > 0.0 && min_radius < outer_radius)) {
    throw ContractViolation("spherefold requires 0 < L < H");
  }
  const double r2 = p.norm_squared();
  const double r = std::sqrt(r2);
  if (r >= outer_radius) return p;
  if (r >= min_radius) return p * (outer_radius * outer_radius / r2);
  return p * (outer_radius * outer_radius / (min_radius * min_radius));
}

FoldOutcome shapefold_detail(const Vec& p, const Shape& outer, const Shape& min, const ScaleMode& mode) {
  const double r2 = p.norm_squared();
  const double r = std::sqrt(r2);
  if (r < kOriginEpsilon) return {p, 1.0, FoldBranch::kOrigin};
  const Vec u = p * (1.0 / r);
  const double rho_min = min.radius_along(u);
  if (r <= rho_min) {
    double factor = 0.0;
    if (const auto* c = std::get_if<ConstantScale>(&mode)) {
      factor = c->factor;
    } else {
      const double rho_outer = outer.radius_along(u);
      factor = rho_outer * rho_outer / (rho_min * rho_min);
    }
    return {p * factor, factor, FoldBranch::kMinScale};
  }
  const double rho_outer = outer.radius_along(u);
  if (r <= rho_outer) {
    const double factor = rho_outer * rho_outer / r2;
    return {p * factor, factor, FoldBranch::kInversion};
  }
  return {p, 1.0, FoldBranch::kIdentity};
}

StepStages step(const Vec& p, const Vec& seed, const IterationParams& params) {
  StepStages s;
  s.boxfolded = boxfold(p, params.fold_halfwidth);
  const FoldOutcome fold = shapefold_detail(s.boxfolded, params.outer_shape, params.min_shape, params.scale_mode);
  s.shapefolded = fold.point;
  s.branch = fold.branch;
  s.fold_factor = fold.factor;
  s.scaled = fold.point * params.scale;
  if (const auto* j = std::get_if<JuliboxOffset>(&params.offset)) {
    s.translated = s.scaled + j->j;
  } else {
    s.translated = s.scaled + seed;
  }
  return s;
}

namespace {

void update_traps(OrbitResult& r, const Vec& p) {
  const int n = p.dim();
  std::array<double, kMaxDim> sq{};
  for (int k = 0; k < n; ++k) sq[k] = p[k] * p[k];
  r.trap_origin = std::min(r.trap_origin, std::sqrt(order_free_sum(sq, n)));
  for (int k = 0; k < n; ++k) {
    std::array<double, kMaxDim> others = sq;
    others[k] = 0.0;
    r.trap_axes[k] = std::min(r.trap_axes[k], std::sqrt(order_free_sum(others, n)));
  }
}

// Shared orbit loop; on_step sees every composite step before the escape test.
template <class OnStep>
OrbitResult run_orbit(const Vec& p0, const IterationParams& params, OnStep&& on_step) {
  OrbitResult r;
  r.trap_origin = std::numeric_limits<double>::infinity();
  r.trap_axes.assign(static_cast<std::size_t>(p0.dim()), std::numeric_limits<double>::infinity());
  update_traps(r, p0);
  Vec p = p0;
  for (int n = 1; n <= params.max_iterations; ++n) {
    const StepStages s = step(p, p0, params);
    on_step(s);
    p = s.translated;
    update_traps(r, p);
    const double mag = p.norm();
    r.final_magnitude = mag;
    if (mag > params.escape_distance) {
      r.escaped = true;
      r.escape_iteration = n;
      return r;
    }
  }
  r.escape_iteration = params.max_iterations;
  return r;
}

}  // namespace

OrbitResult iterate(const Vec& p0, const IterationParams& params) {
  return run_orbit(p0, params, [](const StepStages&) {});
}

OrbitTrace trace(const Vec& p0, const IterationParams& params) {
  OrbitTrace t;
  t.result = run_orbit(p0, params, [&](const StepStages& s) { t.steps.push_back(s); });
  return t;
}

DerivativeOrbit iterate_with_derivative(const Vec& p0, const IterationParams& params) {
  const double abs_scale = std::abs(params.scale);
  double dr = 1.0;
  DerivativeOrbit out;
  out.result = run_orbit(p0, params, [&](const StepStages& s) { dr = dr * s.fold_factor * abs_scale + 1.0; });
  out.derivative = dr;
  return out;
}

double estimate_distance(const Vec& p0, const IterationParams& params, double fudge) {
  const DerivativeOrbit o = iterate_with_derivative(p0, params);
  if (!o.result.escaped) return 0.0;
  return fudge * o.result.final_magnitude / std::abs(o.derivative);
}

}  // namespace shapebox
