#include "conjlab/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "conjlab/errors.hpp"

namespace conjlab {

PLUnimodalMap parse_map_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("map file is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
        throw ParseError("map JSON must be an object with a \"vertices\" array");
    std::vector<Vertex> verts;
    for (const auto& entry : j["vertices"]) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() ||
            !entry[1].is_string())
            throw ParseError("each vertex must be a pair of rational strings");
        verts.push_back({parse_rational(entry[0].get<std::string>()),
                         parse_rational(entry[1].get<std::string>())});
    }
    return make_map(std::move(verts));
}

PLUnimodalMap load_map(const std::string& spec) {
    if (spec == "tent") return tent_map();
    if (spec == "thm5") return thm5_map();
    if (spec.rfind("skew:", 0) == 0) return make_skew_tent(parse_rational(spec.substr(5)));
    std::ifstream in(spec);
    if (!in) throw ParseError("cannot read map file '" + spec + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_map_json(ss.str());
}

std::string map_to_json(const PLUnimodalMap& map) {
    nlohmann::ordered_json j;
    j["vertices"] = nlohmann::ordered_json::array();
    for (const auto& vt : map.vertices())
        j["vertices"].push_back({fraction_str(vt.x), fraction_str(vt.y)});
    return j.dump();
}

}  // namespace conjlab
