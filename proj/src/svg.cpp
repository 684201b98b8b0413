#include "pegfinder/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "pegfinder/curve_io.hpp"

namespace pegfinder {

namespace {

constexpr double kSize = 800.0;
constexpr double kMargin = 0.05 * kSize;

using Polyline = std::vector<Eigen::Vector3d>;

struct Layer {
  std::string label;
  std::string role;
  Polyline points;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Orthographic view: which coordinates map to screen x and screen y.
struct View {
  int h = 0;
  int v = 1;
  double left = 0.0;   // screen panel origin
  double width = kSize;
};

class Canvas {
 public:
  Canvas(const std::vector<Polyline>& all, std::vector<View> views) : views_(std::move(views)) {
    for (int k = 0; k < 3; ++k) {
      lo_[k] = std::numeric_limits<double>::infinity();
      hi_[k] = -lo_[k];
    }
    for (const auto& line : all)
      for (const auto& p : line)
        for (int k = 0; k < 3; ++k) {
          lo_[k] = std::min(lo_[k], p[k]);
          hi_[k] = std::max(hi_[k], p[k]);
        }
    if (!std::isfinite(lo_[0]))
      for (int k = 0; k < 3; ++k) lo_[k] = -1.0, hi_[k] = 1.0;
    double span = 0.0;
    for (const View& v : views_) span = std::max({span, hi_[v.h] - lo_[v.h], hi_[v.v] - lo_[v.v]});
    if (span <= 0.0) span = 1.0;
    const double panel = std::min(views_.front().width, kSize) - 2.0 * kMargin;
    scale_ = panel / span;
  }

  const std::vector<View>& views() const { return views_; }

  // Screen coordinates of p in view v; the drawing is centred in its panel.
  std::pair<double, double> map(const View& v, const Eigen::Vector3d& p) const {
    const double cx = 0.5 * (lo_[v.h] + hi_[v.h]);
    const double cy = 0.5 * (lo_[v.v] + hi_[v.v]);
    const double x = v.left + 0.5 * v.width + scale_ * (p[v.h] - cx);
    const double y = 0.5 * kSize - scale_ * (p[v.v] - cy);
    return {x, y};
  }

  std::string path(const View& v, const Polyline& line, bool closed) const {
    std::ostringstream s;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const auto [x, y] = map(v, line[i]);
      s << (i == 0 ? "M" : " L") << num(x) << " " << num(y);
    }
    if (closed) s << " Z";
    return s.str();
  }

 private:
  std::vector<View> views_;
  double lo_[3], hi_[3];
  double scale_ = 1.0;
};

Polyline ellipse_outline(const Eigen::Vector3d& scale, int h, int v) {
  Polyline out;
  constexpr int count = 256;
  for (int i = 0; i < count; ++i) {
    const double phi = 2.0 * std::numbers::pi * i / count;
    Eigen::Vector3d p = Eigen::Vector3d::Zero();
    p[h] = scale[h] * std::cos(phi);
    p[v] = scale[v] * std::sin(phi);
    out.push_back(p);
  }
  return out;
}

Polyline points_of(const nlohmann::json& pts) {
  Polyline out;
  for (const auto& p : pts) out.emplace_back(p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>());
  return out;
}

}  // namespace

std::string render_svg(const ResultDocument& doc) {
  // Base geometry: curve polygonization or sphere outlines.
  std::vector<Polyline> base;
  bool spatial = false;
  std::optional<Eigen::Vector3d> sphere_scale;
  if (auto it = doc.input.find("item"); it != doc.input.end()) {
    const CorpusItem item = item_from_json(*it);
    if (const auto* c = std::get_if<ClosedCurve>(&item)) {
      base.push_back(c->polygonize(1024));
      spatial = c->dim() == 3;
    } else if (const auto* f = std::get_if<DistanceField>(&item)) {
      if (f->kind() == DistanceField::Kind::chordal) {
        base.push_back(f->curve().polygonize(1024));
        spatial = f->curve().dim() == 3;
      }
    } else if (const auto* s = std::get_if<EmbeddedSphere>(&item)) {
      sphere_scale = s->scale();
      spatial = true;
    }
  }

  std::vector<Layer> layers;
  for (const auto& f : doc.figures)
    layers.push_back({f.at("label").get<std::string>(), f.at("role").get<std::string>(), points_of(f.at("points"))});

  std::vector<View> views;
  if (spatial) {
    views.push_back({0, 1, 0.0, 0.5 * kSize});
    views.push_back({0, 2, 0.5 * kSize, 0.5 * kSize});
  } else {
    views.push_back({0, 1, 0.0, kSize});
  }

  std::vector<Polyline> everything = base;
  if (sphere_scale) {
    Polyline corners;
    for (int k = 0; k < 3; ++k) {
      Eigen::Vector3d p = Eigen::Vector3d::Zero();
      p[k] = (*sphere_scale)[k];
      corners.push_back(p);
      corners.push_back(-p);
    }
    everything.push_back(corners);
  }
  for (const auto& l : layers) everything.push_back(l.points);
  const Canvas canvas(everything, views);

  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  s << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"white\"/>\n";
  s << "<title>" << escape("pegfinder " + doc.subcommand) << "</title>\n";
  for (const View& v : canvas.views()) {
    const char axes[] = {'x', 'y', 'z'};
    s << "<g>\n";
    if (spatial) {
      s << "<text x=\"" << num(v.left + 10.0) << "\" y=\"20.000\" font-family=\"sans-serif\" font-size=\"14\">"
        << axes[v.h] << axes[v.v] << " view</text>\n";
    }
    for (const auto& line : base)
      s << "<path d=\"" << canvas.path(v, line, true) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    if (sphere_scale) {
      s << "<path d=\"" << canvas.path(v, ellipse_outline(*sphere_scale, v.h, v.v), true)
        << "\" fill=\"none\" stroke=\"gray\" stroke-width=\"1\"/>\n";
    }
    for (const auto& l : layers) {
      if (l.role == "polygon") {
        s << "<path d=\"" << canvas.path(v, l.points, true)
          << "\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\"/>\n";
        for (std::size_t i = 0; i < l.points.size(); ++i) {
          const auto [x, y] = canvas.map(v, l.points[i]);
          s << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"4\" fill=\"#c0392b\"/>\n";
          s << "<text x=\"" << num(x + 6.0) << "\" y=\"" << num(y - 6.0)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << (i + 1) << "</text>\n";
        }
      } else if (l.role == "segments") {
        for (std::size_t i = 0; i + 1 < l.points.size(); i += 2)
          s << "<path d=\"" << canvas.path(v, {l.points[i], l.points[i + 1]}, false)
            << "\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\"/>\n";
      } else if (l.role == "path") {
        s << "<path d=\"" << canvas.path(v, l.points, false)
          << "\" fill=\"none\" stroke=\"#2471a3\" stroke-width=\"1\"/>\n";
      } else {
        for (const auto& p : l.points) {
          const auto [x, y] = canvas.map(v, p);
          s << "<rect x=\"" << num(x - 4.0) << "\" y=\"" << num(y - 4.0)
            << "\" width=\"8\" height=\"8\" fill=\"none\" stroke=\"#1e8449\" stroke-width=\"1.5\"/>\n";
        }
        if (!l.points.empty()) {
          const auto [x, y] = canvas.map(v, l.points.front());
          s << "<text x=\"" << num(x + 8.0) << "\" y=\"" << num(y + 14.0)
            << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#1e8449\">" << escape(l.label) << "</text>\n";
        }
      }
    }
    s << "</g>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace pegfinder
