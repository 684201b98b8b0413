#pragma once

#include <string>

#include <json.hpp>

#include "pegfinder/curve.hpp"

namespace pegfinder {

// JSON forms of curves, spheres and fields. The schema lives in
// docs/curve.schema.json; `to_json` always writes the explicit fourier or
// polyline form so that any curve, corpus ones included, round-trips.

nlohmann::json to_json(const ClosedCurve& curve);
nlohmann::json to_json(const EmbeddedSphere& sphere);
nlohmann::json to_json(const DistanceField& field);
nlohmann::json corpus_params_to_json(const CorpusParams& params);
CorpusParams corpus_params_from_json(const nlohmann::json& j);

ClosedCurve curve_from_json(const nlohmann::json& j);
EmbeddedSphere sphere_from_json(const nlohmann::json& j);
DistanceField field_from_json(const nlohmann::json& j);
/// Any of the three; dispatches on "kind".
CorpusItem item_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace pegfinder
