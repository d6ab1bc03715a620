#pragma once

#include <filesystem>
#include <string>

#include "crgauss/cr_map.hpp"

namespace crgauss {

// Map files: {"model", "n", "N", "components": [{"role", "num": [TERM...], "den": [TERM...]}]}
// with TERM = {"coeff": ["p/q", "p/q"], "exps": [e_z1, ..., e_w]}. Errors are
// SchemaError naming the offending field.
CRMap parse_map(const std::string& json_text);
std::string map_to_json(const CRMap& F);

CRMap load_map(const std::filesystem::path& path);
void save_map(const CRMap& F, const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace crgauss
