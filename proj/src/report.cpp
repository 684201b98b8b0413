#include "pegfinder/report.hpp"

#include <cmath>

#include "pegfinder/errors.hpp"

#ifndef PEGFINDER_VERSION
#define PEGFINDER_VERSION "0.0.0"
#endif

namespace pegfinder {

using nlohmann::json;

const char* tool_version() { return PEGFINDER_VERSION; }

json to_json(const ResultDocument& doc) {
  json j;
  j["tool"] = "pegfinder";
  j["version"] = doc.version;
  j["command"] = doc.command;
  j["subcommand"] = doc.subcommand;
  j["status"] = doc.status;
  j["diagnostic"] = doc.diagnostic;
  j["input"] = doc.input;
  j["settings"] = doc.settings;
  j["result"] = doc.result;
  j["branches"] = doc.branches;
  j["events"] = doc.events;
  j["counts"] = doc.counts;
  j["verdicts"] = doc.verdicts;
  j["figures"] = doc.figures;
  if (doc.wall_time) j["wall_time"] = *doc.wall_time;
  return j;
}

namespace {

const json& member(const json& j, const char* key, json::value_t type) {
  auto it = j.find(key);
  if (it == j.end()) throw InvalidInput(std::string("result document lacks \"") + key + "\"");
  if (it->type() != type) throw InvalidInput(std::string("result document member \"") + key + "\" has the wrong type");
  return *it;
}

}  // namespace

ResultDocument document_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("result document must be a JSON object");
  if (member(j, "tool", json::value_t::string) != "pegfinder") throw InvalidInput("not a pegfinder result document");
  ResultDocument doc;
  doc.version = member(j, "version", json::value_t::string).get<std::string>();
  doc.command = member(j, "command", json::value_t::array).get<std::vector<std::string>>();
  doc.subcommand = member(j, "subcommand", json::value_t::string).get<std::string>();
  doc.status = member(j, "status", json::value_t::string).get<std::string>();
  doc.diagnostic = member(j, "diagnostic", json::value_t::string).get<std::string>();
  doc.input = member(j, "input", json::value_t::object);
  doc.settings = member(j, "settings", json::value_t::object);
  doc.result = member(j, "result", json::value_t::object);
  doc.branches = member(j, "branches", json::value_t::array);
  doc.events = member(j, "events", json::value_t::array);
  doc.counts = member(j, "counts", json::value_t::object);
  doc.verdicts = member(j, "verdicts", json::value_t::object);
  doc.figures = member(j, "figures", json::value_t::array);
  if (auto it = j.find("wall_time"); it != j.end()) {
    if (!it->is_number()) throw InvalidInput("wall_time must be a number");
    doc.wall_time = it->get<double>();
  }
  return doc;
}

std::string serialize(const ResultDocument& doc) { return to_json(doc).dump(2) + "\n"; }

ResultDocument parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed result document: ") + e.what());
  }
  return document_from_json(j);
}

std::vector<std::size_t> decimation_indices(std::size_t count, std::size_t max_points) {
  std::vector<std::size_t> out;
  if (count == 0) return out;
  if (max_points < 2) max_points = 2;
  if (count <= max_points) {
    for (std::size_t i = 0; i < count; ++i) out.push_back(i);
    return out;
  }
  const double stride = static_cast<double>(count - 1) / static_cast<double>(max_points - 1);
  for (std::size_t k = 0; k < max_points; ++k) out.push_back(static_cast<std::size_t>(std::llround(k * stride)));
  out.back() = count - 1;
  return out;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json point_to_json(const Eigen::Vector3d& p) { return json::array({p.x(), p.y(), p.z()}); }

json polygon_to_json(const PolygonParam& p) {
  json vs = json::array();
  for (CirclePoint x : vertices(p)) vs.push_back(x.value());
  return {{"vertices", vs}, {"gaps", p.gaps()}, {"lifted", vector_to_json(p.lifted())}};
}

json event_to_json(const Event& e) {
  return {{"kind", event_name(e.kind)}, {"location", vector_to_json(e.location)}, {"before", e.before},
          {"after", e.after}};
}

json branch_to_json(const Branch& branch, std::size_t max_points) {
  json j;
  j["kind"] = branch.kind;
  j["closed"] = branch.closed;
  j["winding"] = branch.closed ? json(branch.winding) : json(nullptr);
  j["isotropy_order"] = branch.isotropy_order;
  j["gauge_pinned"] = branch.gauge_pinned;
  j["sample_count"] = branch.samples.size();
  json samples = json::array();
  for (std::size_t i : decimation_indices(branch.samples.size(), max_points))
    samples.push_back(vector_to_json(branch.samples[i]));
  j["samples"] = std::move(samples);
  json events = json::array();
  for (const Event& e : branch.events) events.push_back(event_to_json(e));
  j["events"] = std::move(events);
  return j;
}

json trace_settings_to_json(const TraceSettings& s) {
  return {{"corrector_tol", s.corrector_tol}, {"step_init", s.step_init},         {"step_max", s.step_max},
          {"closure_tol", s.closure_tol},     {"boundary_floor", s.boundary_floor}, {"max_steps", s.max_steps},
          {"seed", s.seed}};
}

json orbit_to_json(const OrbitRecord& r) {
  json j = {{"representative", polygon_to_json(r.representative)},
            {"residual", r.residual},
            {"orbit_size", r.orbit_size},
            {"condition", std::isfinite(r.condition) ? json(r.condition) : json(nullptr)},
            {"non_transversal", r.non_transversal}};
  if (r.is_special) {
    j["a"] = r.a;
    j["b"] = r.b;
    j["size"] = r.size;
    j["boundary_degenerate"] = r.boundary_degenerate;
  }
  return j;
}

json count_to_json(const CountReport& r) {
  json orbits = json::array();
  for (const auto& o : r.orbits) orbits.push_back(orbit_to_json(o));
  return {{"kind", r.kind},
          {"total", r.total},
          {"orbit_count", r.orbit_count},
          {"parity", r.parity % 2 == 0 ? "even" : "odd"},
          {"orbits", std::move(orbits)},
          {"resolution", r.resolution},
          {"seeds", r.seeds},
          {"converged", r.converged},
          {"seed", r.seed},
          {"rejected", r.rejected},
          {"parity_reliable", r.parity_reliable},
          {"diagnostic", r.diagnostic},
          {"warnings", r.warnings}};
}

json figure(const std::string& label, const std::string& role, const std::vector<Eigen::Vector3d>& points) {
  json pts = json::array();
  for (const auto& p : points) pts.push_back(point_to_json(p));
  return {{"label", label}, {"role", role}, {"points", std::move(pts)}};
}

std::vector<Eigen::Vector3d> curve_points(const ClosedCurve& curve, const std::vector<CirclePoint>& params) {
  std::vector<Eigen::Vector3d> out;
  out.reserve(params.size());
  for (CirclePoint t : params) out.push_back(curve.point(t));
  return out;
}

}  // namespace pegfinder
