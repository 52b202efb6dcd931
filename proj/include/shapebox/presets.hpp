#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "shapebox/scene.hpp"

namespace shapebox {

struct Preset {
  std::string name;
  std::string description;
  SceneConfig scene;
};

/// Built-in scene catalog, in listing order.
const std::vector<Preset>& presets();

/// nullptr when no preset has that name.
const Preset* find_preset(std::string_view name);

}  // namespace shapebox
