#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pegfinder/cli.hpp"
#include "pegfinder/curve_io.hpp"
#include "pegfinder/errors.hpp"
#include "pegfinder/report.hpp"
#include "pegfinder/svg.hpp"
#include "support.hpp"

using namespace pegfinder;
using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Runs the tool inside a scratch directory so that relative output paths in
// the command echo stay fixed.
struct Scratch {
  std::filesystem::path dir;
  std::filesystem::path previous = std::filesystem::current_path();
  explicit Scratch(const std::string& name) : dir(std::filesystem::temp_directory_path() / ("pegfinder_" + name)) {
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    std::filesystem::current_path(dir);
  }
  ~Scratch() { std::filesystem::current_path(previous); }
};

int run(std::vector<std::string> args, std::string* out = nullptr) {
  args.insert(args.begin(), "pegfinder");
  std::ostringstream o, e;
  const int code = run_cli(args, o, e);
  if (out) *out = o.str() + e.str();
  return code;
}

}  // namespace

TEST_CASE("result documents round-trip through JSON") {
  ResultDocument doc;
  doc.command = {"pegfinder", "find-square", "--corpus", "ellipse"};
  doc.subcommand = "find-square";
  doc.result = {{"x", 0.1}, {"y", 1.0 / 3.0}, {"z", 6.02214076e23}, {"tiny", 4.9e-324}};
  doc.branches = json::array({{{"kind", "rhombus"}, {"closed", true}}});
  doc.wall_time = 0.25;
  CHECK(parse_document(serialize(doc)) == doc);
  doc.wall_time.reset();
  CHECK(parse_document(serialize(doc)) == doc);
  CHECK(parse_document(serialize(doc)).result.at("y").get<double>() == 1.0 / 3.0);
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS_AS(parse_document("{"), InvalidInput);
  CHECK_THROWS_AS(parse_document("{\"version\": 3}"), InvalidInput);
}

TEST_CASE("decimation keeps the end points") {
  CHECK(decimation_indices(5, 10) == std::vector<std::size_t>{0, 1, 2, 3, 4});
  const auto idx = decimation_indices(10001, 2000);
  CHECK(idx.size() == 2000);
  CHECK(idx.front() == 0);
  CHECK(idx.back() == 10000);
  CHECK(std::is_sorted(idx.begin(), idx.end()));
}

TEST_CASE("branches are decimated in documents") {
  Branch b;
  b.kind = "rhombus";
  for (int i = 0; i < 5000; ++i) b.samples.push_back(PolygonParam(CirclePoint(i / 5000.0), {0.25, 0.25, 0.25, 0.25}).lifted());
  const json j = branch_to_json(b);
  CHECK(j.at("samples").size() == 2000);
  CHECK(j.at("sample_count").get<int>() == 5000);
  CHECK(j.at("winding").is_null());
}

TEST_CASE("golden documents are reproduced byte for byte") {
  const std::filesystem::path golden = PEGFINDER_GOLDEN_DIR;
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases = {
      {"find_square_ellipse.json", {"find-square", "--corpus", "ellipse", "--a", "2", "--b", "1"}},
      {"count_special_circle.json", {"count-special", "--corpus", "circle", "--size", "0.1"}},
      {"find_ngon_fourier7.json", {"find-ngon", "--n", "5", "--ratios", "1,1,1,1", "--corpus", "fourier-random", "--seed", "7"}},
  };
  Scratch scratch("golden");
  for (auto [name, args] : cases) {
    args.push_back("--json");
    args.push_back(name);
    REQUIRE(run(args) == kExitOk);
    CHECK_MESSAGE(slurp(name) == slurp(golden / name), name);
  }
}

TEST_CASE("golden content") {
  const std::filesystem::path golden = PEGFINDER_GOLDEN_DIR;
  const ResultDocument sq = parse_document(slurp(golden / "find_square_ellipse.json"));
  std::vector<double> xs;
  for (const auto& v : sq.result.at("square").at("vertices")) xs.push_back(v.get<double>());
  std::sort(xs.begin(), xs.end());
  const double t = testing::kEllipseSquareT;
  CHECK(xs[0] == doctest::Approx(t).epsilon(1e-9));
  CHECK(xs[1] == doctest::Approx(0.5 - t).epsilon(1e-9));
  CHECK(xs[2] == doctest::Approx(0.5 + t).epsilon(1e-9));
  CHECK(xs[3] == doctest::Approx(1.0 - t).epsilon(1e-9));

  const ResultDocument sp = parse_document(slurp(golden / "count_special_circle.json"));
  CHECK(sp.result.at("count").get<int>() == 0);
  CHECK(sp.counts.at("parity").get<std::string>() == "even");

  const ResultDocument ng = parse_document(slurp(golden / "find_ngon_fourier7.json"));
  CHECK(std::abs(ng.result.at("winding_sum").get<int>()) == 1);
}

TEST_CASE("re-running the echoed command reproduces the document") {
  Scratch scratch("echo");
  REQUIRE(run({"find-rect", "--corpus", "circle", "--ratio", "2", "--json", "a.json"}) == kExitOk);
  std::vector<std::string> echo = parse_document(slurp("a.json")).command;
  std::filesystem::rename("a.json", "first.json");
  std::ostringstream out, err;
  REQUIRE(run_cli(echo, out, err) == kExitOk);
  CHECK(slurp("a.json") == slurp("first.json"));
}

TEST_CASE("exit codes") {
  Scratch scratch("exit");
  std::string text;
  CHECK(run({"corpus-list"}, &text) == kExitOk);
  CHECK(text.find("spiral") != std::string::npos);
  CHECK(run({"find-square"}) == kExitUsage);
  CHECK(run({"find-rect", "--corpus", "circle"}) == kExitUsage);
  CHECK(run({"no-such-command"}) == kExitUsage);
  CHECK(run({"find-square", "--corpus", "no-such-curve"}) == kExitUsage);
  CHECK(run({"find-square", "--corpus", "circle", "--curve", "x.json"}) == kExitUsage);
  CHECK(run({"count-special", "--corpus", "circle", "--size", "1.5"}) == kExitUsage);
  CHECK(run({"octahedra", "--corpus", "ellipse"}) == kExitUsage);
  // The round sphere has no isolated family: a numerical failure with a document.
  CHECK(run({"octahedra", "--corpus", "scaled-sphere", "--lambda-z", "1", "--json", "round.json"}) == kExitUsage);
}

TEST_CASE("numerical failures still write a document") {
  Scratch scratch("failure");
  // A corrector tolerance below rounding error cannot be met.
  const int code = run({"find-square", "--corpus", "ellipse", "--tol", "1e-20", "--json", "c.json"});
  CHECK(code == kExitNumerical);
  const ResultDocument doc = parse_document(slurp("c.json"));
  CHECK(doc.status == "numerical_failure");
  CHECK_FALSE(doc.diagnostic.empty());
}

TEST_CASE("curve files are accepted") {
  Scratch scratch("curvefile");
  write_text_file("ellipse.json", to_json(corpus_curve("ellipse")).dump());
  REQUIRE(run({"find-square", "--curve", "ellipse.json", "--json", "out.json"}) == kExitOk);
  CHECK(parse_document(slurp("out.json")).input.at("source") == "file");
  write_text_file("broken.json", "{\"kind\": 1}");
  CHECK(run({"find-square", "--curve", "broken.json"}) == kExitUsage);
  CHECK(run({"find-square", "--curve", "missing.json"}) == kExitUsage);
}

TEST_CASE("SVG output") {
  Scratch scratch("svg");
  REQUIRE(run({"find-square", "--corpus", "ellipse", "--json", "sq.json", "--svg", "sq.svg"}) == kExitOk);
  const std::string svg = slurp("sq.svg");
  CHECK(svg.find("viewBox=\"0 0 800 800\"") != std::string::npos);
  std::size_t dots = 0;
  for (std::size_t pos = 0; (pos = svg.find("<circle", pos)) != std::string::npos; ++pos) ++dots;
  CHECK(dots == 4);
  CHECK(render_svg(parse_document(slurp("sq.json"))) == svg);

  REQUIRE(run({"knot-rhombus", "--corpus", "trefoil", "--svg", "knot.svg"}) == kExitOk);
  const std::string knot = slurp("knot.svg");
  CHECK(knot.find("xy view") != std::string::npos);
  CHECK(knot.find("xz view") != std::string::npos);

  REQUIRE(run({"count-special", "--corpus", "spiral", "--size", "0.1", "--trace-paths", "--svg", "spiral.svg"}) == kExitOk);
  CHECK(slurp("spiral.svg").find("stroke=\"#2471a3\"") != std::string::npos);
}

TEST_CASE("timing is recorded only on request") {
  Scratch scratch("timing");
  REQUIRE(run({"find-square", "--corpus", "ellipse", "--json", "a.json"}) == kExitOk);
  CHECK_FALSE(parse_document(slurp("a.json")).wall_time.has_value());
  REQUIRE(run({"find-square", "--corpus", "ellipse", "--timing", "--json", "b.json"}) == kExitOk);
  CHECK(parse_document(slurp("b.json")).wall_time.has_value());
}
