#include "pegfinder/curve_io.hpp"

#include <fstream>
#include <sstream>

#include "pegfinder/errors.hpp"

namespace pegfinder {

using nlohmann::json;

namespace {

const char* kernel_name(DistanceField::Kernel k) {
  return k == DistanceField::Kernel::abs_sin ? "abs-sin" : "sin-squared";
}

DistanceField::Kernel kernel_from_name(const std::string& s) {
  if (s == "abs-sin") return DistanceField::Kernel::abs_sin;
  if (s == "sin-squared") return DistanceField::Kernel::sin_squared;
  throw InvalidInput("unknown field kernel: " + s);
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : it->get<T>();
}

}  // namespace

json to_json(const ClosedCurve& curve) {
  json j;
  j["dim"] = curve.dim();
  if (curve.kind() == ClosedCurve::Kind::fourier) {
    j["kind"] = "fourier";
    j["cos"] = curve.cos_coeffs();
    j["sin"] = curve.sin_coeffs();
  } else {
    j["kind"] = "polyline";
    json verts = json::array();
    for (const auto& v : curve.vertices()) {
      json p = json::array();
      for (int k = 0; k < curve.dim(); ++k) p.push_back(v[k]);
      verts.push_back(std::move(p));
    }
    j["vertices"] = std::move(verts);
  }
  return j;
}

json to_json(const EmbeddedSphere& sphere) {
  return json{{"kind", "sphere"}, {"scale", {sphere.scale().x(), sphere.scale().y(), sphere.scale().z()}}};
}

json to_json(const DistanceField& field) {
  if (field.kind() == DistanceField::Kind::chordal) return json{{"kind", "chordal"}, {"curve", to_json(field.curve())}};
  json terms = json::array();
  for (const FieldTerm& t : field.terms()) {
    terms.push_back({{"argument", t.argument == FieldTerm::Argument::sum ? "sum" : "difference"},
                     {"k", t.k},
                     {"cos", t.cos},
                     {"sin", t.sin}});
  }
  return json{{"kind", "synthetic"}, {"kernel", kernel_name(field.kernel())}, {"terms", std::move(terms)}};
}

json corpus_params_to_json(const CorpusParams& p) {
  return json{{"a", p.a},           {"b", p.b},           {"radius", p.radius},
              {"degree", p.degree}, {"amp", p.amp},       {"lambda_x", p.lambda_x},
              {"lambda_y", p.lambda_y}, {"lambda_z", p.lambda_z}, {"seed", p.seed}};
}

CorpusParams corpus_params_from_json(const json& j) {
  CorpusParams p;
  p.a = get_or(j, "a", p.a);
  p.b = get_or(j, "b", p.b);
  p.radius = get_or(j, "radius", p.radius);
  p.degree = get_or(j, "degree", p.degree);
  p.amp = get_or(j, "amp", p.amp);
  p.lambda_x = get_or(j, "lambda_x", p.lambda_x);
  p.lambda_y = get_or(j, "lambda_y", p.lambda_y);
  p.lambda_z = get_or(j, "lambda_z", p.lambda_z);
  p.seed = get_or<std::uint64_t>(j, "seed", p.seed);
  return p;
}

CorpusItem item_from_json(const json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "corpus") return corpus(j.at("name").get<std::string>(), corpus_params_from_json(j));
    if (kind == "ellipse") {
      CorpusParams p;
      p.a = j.at("a").get<double>();
      p.b = j.at("b").get<double>();
      return corpus("ellipse", p);
    }
    if (kind == "circle") {
      CorpusParams p;
      p.radius = get_or(j, "radius", 1.0);
      return corpus("circle", p);
    }
    if (kind == "fourier") {
      return ClosedCurve::fourier(j.at("dim").get<int>(), j.at("cos").get<std::vector<std::vector<double>>>(),
                                  j.at("sin").get<std::vector<std::vector<double>>>());
    }
    if (kind == "polyline") {
      const int dim = j.at("dim").get<int>();
      std::vector<Eigen::Vector3d> verts;
      for (const auto& p : j.at("vertices")) {
        const auto c = p.get<std::vector<double>>();
        if (static_cast<int>(c.size()) != dim) throw InvalidInput("polyline vertex has wrong dimension");
        verts.emplace_back(c[0], c[1], dim == 3 ? c[2] : 0.0);
      }
      return ClosedCurve::polyline(dim, std::move(verts));
    }
    if (kind == "sphere") {
      const auto s = j.at("scale").get<std::vector<double>>();
      if (s.size() != 3) throw InvalidInput("sphere scale needs three entries");
      return EmbeddedSphere(Eigen::Vector3d(s[0], s[1], s[2]));
    }
    if (kind == "chordal") return DistanceField::chordal(curve_from_json(j.at("curve")));
    if (kind == "synthetic") {
      std::vector<FieldTerm> terms;
      for (const auto& t : j.value("terms", json::array())) {
        FieldTerm term;
        const std::string arg = t.at("argument").get<std::string>();
        if (arg != "sum" && arg != "difference") throw InvalidInput("field term argument must be sum or difference");
        term.argument = arg == "sum" ? FieldTerm::Argument::sum : FieldTerm::Argument::difference;
        term.k = t.at("k").get<int>();
        term.cos = get_or(t, "cos", 0.0);
        term.sin = get_or(t, "sin", 0.0);
        terms.push_back(term);
      }
      return DistanceField::synthetic(kernel_from_name(j.value("kernel", std::string("abs-sin"))), std::move(terms));
    }
    throw InvalidInput("unknown kind: " + kind);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed curve specification: ") + e.what());
  }
}

ClosedCurve curve_from_json(const json& j) {
  CorpusItem item = item_from_json(j);
  if (auto* c = std::get_if<ClosedCurve>(&item)) return std::move(*c);
  throw InvalidInput("specification does not describe a curve");
}

EmbeddedSphere sphere_from_json(const json& j) {
  CorpusItem item = item_from_json(j);
  if (auto* s = std::get_if<EmbeddedSphere>(&item)) return std::move(*s);
  throw InvalidInput("specification does not describe a sphere");
}

DistanceField field_from_json(const json& j) {
  CorpusItem item = item_from_json(j);
  if (auto* f = std::get_if<DistanceField>(&item)) return std::move(*f);
  if (auto* c = std::get_if<ClosedCurve>(&item)) return DistanceField::chordal(std::move(*c));
  throw InvalidInput("specification does not describe a distance field");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput("cannot parse " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

}  // namespace pegfinder
