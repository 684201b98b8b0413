// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (capped at 1 for ctest).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "pegfinder/cli.hpp"
#include "pegfinder/counting.hpp"
#include "pegfinder/curve_io.hpp"
#include "pegfinder/errors.hpp"
#include "pegfinder/finders.hpp"
#include "pegfinder/report.hpp"

using namespace pegfinder;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = limit_seconds <= 0.0 || seconds < limit_seconds;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("criterion %2d: %s  %s  [%.2f s", id, pass ? "PASS" : "FAIL", o.detail.c_str(), seconds);
  if (limit_seconds > 0.0) std::printf(" of %.0f s", limit_seconds);
  std::printf("]\n");
  std::fflush(stdout);
}

const std::filesystem::path scratch = std::filesystem::temp_directory_path() / "pegfinder_acceptance";

// Runs the command-line tool and returns its exit code and JSON document.
std::pair<int, json> cli(std::vector<std::string> args, const std::string& name) {
  const std::string path = (scratch / (name + ".json")).string();
  args.insert(args.begin(), "pegfinder");
  args.push_back("--json");
  args.push_back(path);
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  json doc = std::filesystem::exists(path) ? read_json_file(path) : json();
  return {code, doc};
}

std::string str(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

CorpusParams fourier(std::uint64_t seed) {
  CorpusParams p;
  p.seed = seed;
  return p;
}

}  // namespace

int main() {
  std::filesystem::create_directories(scratch);

  criterion(1, 1.0, [] {
    auto [code, doc] = cli({"find-square", "--corpus", "ellipse", "--a", "2", "--b", "1"}, "c1");
    const double t = std::acos(1.0 / std::sqrt(5.0)) / (2.0 * std::numbers::pi);
    const double expected[4] = {t, 0.5 - t, 0.5 + t, 1.0 - t};
    std::vector<double> got;
    for (const auto& v : doc.at("result").at("square").at("vertices")) got.push_back(v.get<double>());
    std::sort(got.begin(), got.end());
    double err = 0.0;
    for (int k = 0; k < 4; ++k) err = std::max(err, std::abs(got[k] - expected[k]));
    const int orbits = doc.at("result").at("orbit_count").get<int>();
    return Outcome{code == 0 && err < 1e-6 && orbits == 1,
                   "vertex error " + str(err) + ", " + std::to_string(orbits) + " orbit(s)"};
  });

  // Curves of criteria 2 and 5.
  std::vector<ClosedCurve> parity_curves;
  for (std::uint64_t s = 0; s < 20; ++s) parity_curves.push_back(corpus_curve("fourier-random", fourier(s)));

  criterion(2, 120.0, [&] {
    int odd = 0;
    std::string counts;
    for (const auto& c : parity_curves) {
      const CountReport r = count_squares(c);
      if (!r.rejected && r.parity == 1) ++odd;
      counts += (counts.empty() ? "" : ",") + std::to_string(r.orbit_count);
    }
    return Outcome{odd == 20, std::to_string(odd) + "/20 odd (orbits " + counts + ")"};
  });

  // Criteria 3 and 4 share one run.
  std::vector<DistanceField> winding_fields = {corpus_field("circle"), corpus_field("ellipse")};
  for (std::uint64_t s = 0; s < 5; ++s) winding_fields.push_back(corpus_field("fourier-random", fourier(s)));
  int unit_sums = 0, full_isotropy = 0, runs = 0;
  std::string sums;
  criterion(3, 120.0, [&] {
    for (int n = 3; n <= 5; ++n)
      for (const auto& f : winding_fields) {
        const NgonResult r = find_ngon_families(f, std::vector<double>(n - 1, 1.0));
        ++runs;
        unit_sums += std::abs(r.winding_sum) == 1;
        full_isotropy += r.max_isotropy == n;
        sums += (sums.empty() ? "" : ",") + std::to_string(r.winding_sum);
      }
    return Outcome{unit_sums == runs, std::to_string(unit_sums) + "/" + std::to_string(runs) +
                                          " with |sum| = 1 (sums " + sums + ")"};
  });
  criterion(4, 0.0, [&] {
    return Outcome{runs > 0 && full_isotropy == runs,
                   std::to_string(full_isotropy) + "/" + std::to_string(runs) + " with a full-isotropy branch"};
  });

  criterion(5, 0.0, [&] {
    int agree = 0;
    double worst = 0.0;
    for (const auto& c : parity_curves) {
      const SquareResult r = find_square(c);
      agree += r.agrees && r.residual < 1e-8;
      worst = std::max(worst, r.agreement);
    }
    return Outcome{agree == 20, std::to_string(agree) + "/20 agree, worst distance " + str(worst)};
  });

  criterion(6, 30.0, [] {
    const SpecialQuadReport circle = count_special_quads(corpus_field("circle"), 0.1);
    bool chain = true;
    std::string detail = "circle count " + std::to_string(circle.count.orbit_count) + "; verdicts";
    std::vector<std::pair<std::string, CorpusParams>> curves = {
        {"circle", {}}, {"ellipse", {}}, {"cusped", {}}, {"spiral", {}}};
    for (std::uint64_t s = 0; s < 3; ++s) curves.push_back({"fourier-random", fourier(s)});
    for (const auto& [name, params] : curves) {
      const SpecialQuadReport r =
          name == "circle" ? circle : count_special_quads(corpus_field(name, params), 0.1);
      if (r.verdict == SpecialVerdict::even_square_missing) chain = false;
      detail += " " + name + (name == "fourier-random" ? std::to_string(params.seed) : "") + ":" +
                std::to_string(r.count.orbit_count);
    }
    return Outcome{circle.count.orbit_count == 0 && circle.count.parity == 0 && chain, detail};
  });

  criterion(7, 60.0, [] {
    int ok = 0;
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 50; ++s) {
      CorpusParams p;
      p.seed = s;
      const TriangleResult r = find_equilateral_triangle(corpus_field("synthetic-field", p));
      ok += r.residual < 1e-8 && r.spread > 1e-3;
      worst = std::max(worst, r.residual);
    }
    return Outcome{ok == 50, std::to_string(ok) + "/50, worst residual " + str(worst)};
  });

  criterion(8, 0.0, [] {
    auto [c1, circle] = cli({"find-rect", "--corpus", "circle", "--ratio", "2"}, "c8a");
    auto [c2, ellipse] = cli({"find-rect", "--corpus", "ellipse", "--a", "2", "--b", "1", "--ratio", "2"}, "c8b");
    const double u = std::atan(2.0) / std::numbers::pi;
    double err = 1.0;
    if (c1 == 0)
      for (const auto& g : circle.at("result").at("rectangle").at("gaps")) err = std::min(err, std::abs(g.get<double>() - u));
    const double res = c2 == 0 ? ellipse.at("result").at("residual").get<double>() : 1.0;
    return Outcome{err < 1e-8 && res < 1e-8, "circle u error " + str(err) + ", ellipse residual " + str(res)};
  });

  criterion(9, 30.0, [] {
    auto [code, doc] = cli({"knot-rhombus", "--corpus", "trefoil"}, "c9");
    const double res = doc.at("result").at("residual").get<double>();
    const double cop = std::abs(doc.at("result").at("coplanarity").get<double>());
    return Outcome{code == 0 && res < 1e-8 && cop < 1e-6, "residual " + str(res) + ", coplanarity " + str(cop)};
  });

  criterion(10, 300.0, [] {
    auto [code, doc] = cli({"octahedra", "--corpus", "scaled-sphere", "--lambda-z", "0.5"}, "c10");
    const auto& r = doc.at("result");
    const int count = r.at("component_count").get<int>();
    return Outcome{code == 0 && count == 16,
                   std::to_string(count) + " components, " + std::to_string(r.at("orbit_count").get<int>()) +
                       " group orbit(s), edge spread " + str(r.at("max_edge_spread").get<double>())};
  });

  criterion(11, 120.0, [] {
    const RectangleReport e = classify_rectangle_components(corpus_curve("ellipse"));
    const RectangleReport f = classify_rectangle_components(corpus_curve("fourier-random", fourier(5)));
    const int total = 4 * f.squares.orbit_count;
    return Outcome{e.closed_even && f.closed_even && f.total_4_mod_8,
                   "ellipse " + std::to_string(e.closed_components) + " closed/" + std::to_string(e.open_components) +
                       " open, fourier seed 5 " + std::to_string(f.closed_components) + " closed/" +
                       std::to_string(f.open_components) + " open, " + std::to_string(total) + " squares"};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
