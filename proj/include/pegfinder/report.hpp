#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pegfinder/continuation.hpp"
#include "pegfinder/counting.hpp"
#include "pegfinder/curve.hpp"
#include "pegfinder/polygon.hpp"

namespace pegfinder {

const char* tool_version();

/// Everything one CLI run produces. Sections are plain JSON so that each
/// subcommand can fill in its own result layout; docs/result.schema.json
/// describes the common frame.
struct ResultDocument {
  std::string version = tool_version();
  std::vector<std::string> command;
  std::string subcommand;
  std::string status = "ok";  // "ok" or "numerical_failure"
  std::string diagnostic;
  nlohmann::json input = nlohmann::json::object();
  nlohmann::json settings = nlohmann::json::object();
  nlohmann::json result = nlohmann::json::object();
  nlohmann::json branches = nlohmann::json::array();
  nlohmann::json events = nlohmann::json::array();
  nlohmann::json counts = nlohmann::json::object();
  nlohmann::json verdicts = nlohmann::json::object();
  // Geometry for rendering: [{"label", "role", "points": [[x, y, z], ...]}],
  // role one of "polygon", "segments" (point pairs), "path", "event".
  nlohmann::json figures = nlohmann::json::array();
  std::optional<double> wall_time;

  friend bool operator==(const ResultDocument&, const ResultDocument&) = default;
};

nlohmann::json to_json(const ResultDocument& doc);
/// Throws InvalidInput when required members are missing or mistyped.
ResultDocument document_from_json(const nlohmann::json& j);
/// Indented JSON with a trailing newline. Doubles are written in the
/// shortest form that parses back to the same bits.
std::string serialize(const ResultDocument& doc);
ResultDocument parse_document(const std::string& text);

/// Indices of at most `max_points` samples out of `count`, evenly spread and
/// always keeping the first and the last.
std::vector<std::size_t> decimation_indices(std::size_t count, std::size_t max_points);

nlohmann::json vector_to_json(const Eigen::VectorXd& v);
nlohmann::json point_to_json(const Eigen::Vector3d& p);
nlohmann::json polygon_to_json(const PolygonParam& p);
nlohmann::json event_to_json(const Event& e);
nlohmann::json branch_to_json(const Branch& branch, std::size_t max_points = 2000);
nlohmann::json trace_settings_to_json(const TraceSettings& s);
nlohmann::json orbit_to_json(const OrbitRecord& r);
nlohmann::json count_to_json(const CountReport& r);

/// Figure entry with the curve points at the given parameters.
nlohmann::json figure(const std::string& label, const std::string& role, const std::vector<Eigen::Vector3d>& points);
std::vector<Eigen::Vector3d> curve_points(const ClosedCurve& curve, const std::vector<CirclePoint>& params);

}  // namespace pegfinder
