#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "hk/transform.hpp"

namespace hk::io {

// Atomic file write: temp file in the same directory, then rename.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

std::string csv_field(const std::string& s);  // RFC-4180 quoting

// Grid functions as two-column CSV (coordinate,value).
std::string radial_to_csv(const RadialGridFunction& f);
RadialGridFunction radial_from_csv(const HyperbolicSpace& space, const std::string& text);
std::string spectral_to_csv(const SpectralGridFunction& f);
SpectralGridFunction spectral_from_csv(const HyperbolicSpace& space, const std::string& text);

// JSON envelope with space metadata (schema: docs/schema/grid_function.schema.json).
nlohmann::json radial_to_json(const RadialGridFunction& f);
RadialGridFunction radial_from_json(const nlohmann::json& j);
nlohmann::json spectral_to_json(const SpectralGridFunction& f);
SpectralGridFunction spectral_from_json(const nlohmann::json& j);

}  // namespace hk::io
