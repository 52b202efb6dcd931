#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "shapebox/scene.hpp"

namespace shapebox {

class ProbeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Stage-by-stage orbit of one seed point: boxfold, shapefold, scale, offset.
struct ProbeReport {
  Vec seed;
  double scale = 0.0;
  OrbitTrace trace;
};

/// Throws ProbeError when the point dimension differs from the scene's.
ProbeReport probe(const SceneConfig& scene, const Vec& point, std::optional<int> max_iterations = std::nullopt);

/// "x,y[,z[,w]]" with optional surrounding whitespace.
Vec parse_point(std::string_view text);

nlohmann::json orbit_to_json(const OrbitResult& orbit);
nlohmann::json probe_to_json(const ProbeReport& report);

/// Human-readable stage table (17 significant digits) closed by one line
/// "orbit {...}" holding the OrbitResult as JSON.
std::string probe_to_text(const ProbeReport& report);

}  // namespace shapebox
