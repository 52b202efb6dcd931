#include "shapebox/probe.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>
#include <vector>

namespace shapebox {

using nlohmann::json;

ProbeReport probe(const SceneConfig& scene, const Vec& point, std::optional<int> max_iterations) {
  const int n = scene.iteration.dimension;
  if (point.dim() != n) {
    throw ProbeError("point has " + std::to_string(point.dim()) + " components, scene is " + std::to_string(n) + "D");
  }
  if (!point.is_finite()) throw ProbeError("point components must be finite");
  IterationParams params = scene.iteration;
  if (max_iterations) {
    if (*max_iterations < 1) throw ProbeError("max iterations must be >= 1");
    params.max_iterations = *max_iterations;
  }
  return ProbeReport{point, params.scale, trace(point, params)};
}

Vec parse_point(std::string_view text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    std::string_view part = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!part.empty() && (part.front() == ' ' || part.front() == '\t')) part.remove_prefix(1);
    while (!part.empty() && (part.back() == ' ' || part.back() == '\t')) part.remove_suffix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size()) {
      throw ProbeError("cannot parse point component '" + std::string(part) + "'");
    }
    values.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (values.size() < 2 || values.size() > 4) {
    throw ProbeError("a point needs 2 to 4 comma-separated components, got " + std::to_string(values.size()));
  }
  return Vec::from_span(values);
}

namespace {

json vec_json(const Vec& v) { return std::vector<double>(v.components().begin(), v.components().end()); }

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const Vec& v) {
  std::string s = "(";
  for (int k = 0; k < v.dim(); ++k) {
    if (k) s += ", ";
    s += fmt(v[k]);
  }
  return s + ")";
}

}  // namespace

json orbit_to_json(const OrbitResult& o) {
  return {{"escaped", o.escaped},
          {"escape_iteration", o.escape_iteration},
          {"trap_origin", o.trap_origin},
          {"trap_axes", o.trap_axes},
          {"final_magnitude", o.final_magnitude}};
}

json probe_to_json(const ProbeReport& r) {
  json steps = json::array();
  for (std::size_t i = 0; i < r.trace.steps.size(); ++i) {
    const StepStages& s = r.trace.steps[i];
    steps.push_back({{"iteration", i + 1},
                     {"boxfold", vec_json(s.boxfolded)},
                     {"shapefold", vec_json(s.shapefolded)},
                     {"branch", to_string(s.branch)},
                     {"fold_factor", s.fold_factor},
                     {"scaled", vec_json(s.scaled)},
                     {"translated", vec_json(s.translated)}});
  }
  return {{"seed", vec_json(r.seed)}, {"scale", r.scale}, {"steps", steps}, {"orbit", orbit_to_json(r.trace.result)}};
}

std::string probe_to_text(const ProbeReport& r) {
  std::ostringstream out;
  out << "seed        " << fmt(r.seed) << "\n";
  out << "scale       " << fmt(r.scale) << "\n";
  for (std::size_t i = 0; i < r.trace.steps.size(); ++i) {
    const StepStages& s = r.trace.steps[i];
    out << "iteration " << (i + 1) << "\n";
    out << "  boxfold    " << fmt(s.boxfolded) << "\n";
    out << "  shapefold  " << fmt(s.shapefolded) << "  [" << to_string(s.branch) << ", factor " << fmt(s.fold_factor)
        << "]\n";
    out << "  scaled     " << fmt(s.scaled) << "\n";
    out << "  translated " << fmt(s.translated) << "\n";
  }
  out << "orbit " << orbit_to_json(r.trace.result).dump() << "\n";
  return out.str();
}

}  // namespace shapebox
