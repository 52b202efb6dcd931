#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "shapebox/geometry.hpp"

namespace shapebox {

/// Inner-branch scaling of the shapefold.
struct RatioScale {
  bool operator==(const RatioScale&) const = default;
};
struct ConstantScale {
  double factor;
  bool operator==(const ConstantScale&) const = default;
};
using ScaleMode = std::variant<RatioScale, ConstantScale>;

/// Translation after scaling: the seed point, or a fixed vector J.
struct MandelboxOffset {
  bool operator==(const MandelboxOffset&) const = default;
};
struct JuliboxOffset {
  Vec j;
  bool operator==(const JuliboxOffset&) const = default;
};
using OffsetMode = std::variant<MandelboxOffset, JuliboxOffset>;

/// Every knob of one Mandelbox variant.
struct IterationParams {
  int dimension = 3;
  double fold_halfwidth = 1.0;
  Shape outer_shape = Shape::ball(1.0);
  Shape min_shape = Shape::ball(0.5);
  ScaleMode scale_mode = RatioScale{};
  double scale = 2.0;
  OffsetMode offset = MandelboxOffset{};
  double escape_distance = 1024.0;
  int max_iterations = 100;

  bool operator==(const IterationParams&) const = default;
};

struct ParamDiagnostic {
  std::string path;  // e.g. "outer_shape.children[1].radius"
  std::string message;
};

/// Hard invariants: F, d > 0, S ≠ 0, i ≥ 1, valid shapes, matching Julibox J.
std::optional<ParamDiagnostic> validate_params(const IterationParams& params);

/// Advisory check that the min shape sits inside the outer shape, sampled
/// over 256 fixed pseudo-random directions. Returns human-readable warnings.
std::vector<std::string> nesting_warnings(const IterationParams& params);

struct OrbitResult {
  bool escaped = false;
  int escape_iteration = 0;
  double trap_origin = 0.0;
  std::vector<double> trap_axes;
  double final_magnitude = 0.0;

  bool operator==(const OrbitResult&) const = default;
};

enum class FoldBranch { kOrigin, kMinScale, kInversion, kIdentity };
std::string to_string(FoldBranch branch);

/// Shapefold output expressed as p·factor, plus which branch produced it.
struct FoldOutcome {
  Vec point;
  double factor;
  FoldBranch branch;
};

/// One conditional reflection per coordinate through the faces ±F.
Vec boxfold(const Vec& p, double fold_halfwidth);

/// Classic three-way spherical fold. Requires 0 < L < H.
Vec spherefold(const Vec& p, double outer_radius, double min_radius);

FoldOutcome shapefold_detail(const Vec& p, const Shape& outer, const Shape& min, const ScaleMode& mode);
inline Vec shapefold(const Vec& p, const Shape& outer, const Shape& min, const ScaleMode& mode) {
  return shapefold_detail(p, outer, min, mode).point;
}

/// Intermediate values of one composite step, in application order.
struct StepStages {
  Vec boxfolded;
  Vec shapefolded;
  FoldBranch branch;
  double fold_factor;
  Vec scaled;
  Vec translated;
};

/// Runs the whole map once: translated = shapefold(boxfold(p))·S + offset.
StepStages step(const Vec& p, const Vec& seed, const IterationParams& params);

/// Iterates from p0 until ‖P‖ > d or the iteration cap. Traps cover the seed
/// and every iterate through the escaping one.
OrbitResult iterate(const Vec& p0, const IterationParams& params);

/// Same as iterate() but also records every step.
struct OrbitTrace {
  std::vector<StepStages> steps;
  OrbitResult result;
};
OrbitTrace trace(const Vec& p0, const IterationParams& params);

inline bool membership(const Vec& p0, const IterationParams& params) { return !iterate(p0, params).escaped; }

/// Running-derivative orbit: result plus the accumulated scalar derivative.
struct DerivativeOrbit {
  OrbitResult result;
  double derivative;
};
DerivativeOrbit iterate_with_derivative(const Vec& p0, const IterationParams& params);

/// Distance estimate fudge·‖P‖/|dr| at escaping points, 0 for members.
double estimate_distance(const Vec& p0, const IterationParams& params, double fudge);

}  // namespace shapebox
