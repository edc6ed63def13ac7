#pragma once

#include <string>

#include "conjlab/map.hpp"

namespace conjlab {

// Map ingestion format: {"vertices": [["0","0"],["1/5","1/2"],...]} with
// rationals as "p/q" or integer strings; decimals rejected.
PLUnimodalMap parse_map_json(const std::string& text);

// Builtin names ("tent", "skew:<v>", "thm5") or a JSON file path.
PLUnimodalMap load_map(const std::string& spec);

std::string map_to_json(const PLUnimodalMap& map);

}  // namespace conjlab
