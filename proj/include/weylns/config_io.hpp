#pragma once

#include <filesystem>
#include <string_view>

#include <nlohmann/json.hpp>

#include "weylns/ns_model.hpp"

namespace weylns {

/// Parses the surface config JSON:
///   {"fibers":[{"name":"t0","n":3}, ...],
///    "sections":[{"name":"P","components":{"t0":1},"order":3,
///                 "pairings":{"O":0},"mw":[1]}],
///    "mordell_weil":{"rank":0,"torsion":[3]}}
/// Malformed input throws ParseError naming the offending location; model
/// violations surface as the SurfaceConfig errors.
SurfaceConfig parse_config(std::string_view json_text);
SurfaceConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const SurfaceConfig& config);

} // namespace weylns
