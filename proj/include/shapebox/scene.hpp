#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "shapebox/dynamics.hpp"

namespace shapebox {

using Rgb = std::array<double, 3>;

/// Planar window for 2D scenes. Rotation turns the window counter-clockwise.
struct Window2D {
  std::array<double, 2> center{0.0, 0.0};
  double width = 8.0;
  double rotation = 0.0;
  bool operator==(const Window2D&) const = default;
};

/// Planar slice through a 3D or 4D set spanned by two orthonormal vectors.
struct SliceFrame {
  Vec origin;
  Vec basis_u;
  Vec basis_v;
  double width = 8.0;
  bool operator==(const SliceFrame&) const = default;
};

/// Perspective camera for ray marching. w_slice fixes the fourth coordinate
/// of 4D scenes and must be absent for 3D scenes.
struct Camera3D {
  std::array<double, 3> eye{0.0, 0.0, 6.0};
  std::array<double, 3> look_at{0.0, 0.0, 0.0};
  std::array<double, 3> up{0.0, 1.0, 0.0};
  double vertical_fov = 0.8;
  std::optional<double> w_slice;
  bool operator==(const Camera3D&) const = default;
};

using ViewSpec = std::variant<Window2D, SliceFrame, Camera3D>;

struct Palette {
  Rgb background{0.04, 0.04, 0.06};
  double w_origin = 1.5;
  double w_axis = 8.0;
  double gamma = 2.2;
  // cold (far from axes), warm (near an axis), hot (near the origin)
  std::array<Rgb, 3> colors{Rgb{0.08, 0.16, 0.42}, Rgb{0.92, 0.55, 0.18}, Rgb{1.0, 0.96, 0.86}};
  bool operator==(const Palette&) const = default;
};

enum class RendererKind { kSampled, kRaymarch };

struct RendererTuning {
  double fudge = 0.5;
  double hit_epsilon = 1e-4;
  int max_steps = 512;
  double max_distance = 64.0;
  bool supersample = false;
  bool operator==(const RendererTuning&) const = default;
};

struct SceneConfig {
  int schema_version = 1;
  IterationParams iteration;
  ViewSpec view = Window2D{};
  int width = 256;
  int height = 256;
  Palette palette;
  RendererKind renderer = RendererKind::kSampled;
  RendererTuning tuning;
  std::optional<int> threads;  // nullopt means "auto"
  int tile_size = 32;

  bool operator==(const SceneConfig&) const = default;
};

/// Scene failure with the dotted field path it was found at.
class SceneError : public std::runtime_error {
 public:
  enum class Kind { kParse, kValidation };
  SceneError(Kind kind, std::string path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message),
        kind_(kind),
        path_(std::move(path)),
        message_(message) {}
  Kind kind() const { return kind_; }
  const std::string& path() const { return path_; }
  const std::string& message() const { return message_; }

 private:
  Kind kind_;
  std::string path_;
  std::string message_;
};

/// 1e-4 × the eye-to-target distance for cameras, 1e-4 × window width otherwise.
double default_hit_epsilon(const ViewSpec& view);

/// Throws SceneError(kValidation) at the first invariant violation.
void validate_scene(const SceneConfig& scene);

/// Strict schema-version-1 parse; unknown fields are errors. Defaults are
/// filled in and the result validated.
SceneConfig parse_scene(std::string_view text);
SceneConfig scene_from_json(const nlohmann::json& doc, const std::string& root_path = "");

/// Canonical document with every field written out.
nlohmann::json scene_to_json(const SceneConfig& scene);
std::string dump_scene(const SceneConfig& scene);

nlohmann::json shape_to_json(const Shape& shape);
Shape shape_from_json(const nlohmann::json& doc, const std::string& path);

/// FNV-1a 64 over the canonical compact document, as 16 hex digits.
std::string scene_hash(const SceneConfig& scene);

}  // namespace shapebox
