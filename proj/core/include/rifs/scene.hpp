#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "rifs/geometry.hpp"
#include "rifs/group_closure.hpp"
#include "rifs/map_algebra.hpp"

namespace rifs {

inline constexpr int kDefaultResolution = 512;

/// A parsed scene file: the system plus its render settings, with defaults
/// filled in.
struct Scene {
  RSystem system;
  Rect window;
  int resolution = kDefaultResolution;
  bool window_from_file = false;
  bool resolution_from_file = false;
};

/// Parses scene JSON. Syntax errors carry the parser's position; validation
/// errors name the offending element, e.g. "contractions[1]: ...". Both are
/// thrown as ValidationError. Missing weights default to uniform; given
/// weights are normalised to sum to 1.
Scene parse_scene(std::string_view text);
/// Throws IoError if the file cannot be read.
Scene load_scene(const std::filesystem::path& path);

/// Scene JSON for a system. Doubles are written with round-trip precision.
std::string scene_json(const RSystem& system, const std::optional<Rect>& window = std::nullopt,
                       const std::optional<int>& resolution = std::nullopt);
/// Scene JSON for an ordinary IFS: an identity-only isometry list plus the maps.
std::string flat_scene_json(const FlatIFS& ifs, const std::optional<Rect>& window = std::nullopt,
                            const std::optional<int>& resolution = std::nullopt);

}  // namespace rifs
