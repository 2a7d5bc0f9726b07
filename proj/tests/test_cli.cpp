#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "simplex_angles/cli.hpp"
#include "simplex_angles/families.hpp"
#include "simplex_angles/mesh.hpp"

using namespace simplex_angles;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "simplex-angles");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempFile {
 public:
  explicit TempFile(const std::string& name, const std::string& content = "")
      : path_((fs::temp_directory_path() / ("simplex_angles_test_" + name)).string()) {
    if (!content.empty()) {
      std::ofstream out(path_);
      out << content;
    }
  }
  ~TempFile() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }
  std::string read() const {
    std::ifstream in(path_);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

 private:
  std::string path_;
};

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run({"--help"}).code == kExitPass);
  CHECK(run({"study", "--help"}).code == kExitPass);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"study", "--family", "cap", "--bogus"}).code == kExitUsage);
  CHECK(run({"study", "--family", "nosuch"}).code == kExitUsage);
  CHECK(run({"study", "--family", "cap", "--dim", "9"}).code == kExitUsage);
  CHECK(run({"study", "--family", "sliver", "--dim", "4"}).code == kExitUsage);
  CHECK(run({"study", "--family", "cap", "--schedule", "0.5,2,3"}).code == kExitUsage);
  CHECK(run({"study", "--family", "cap", "--schedule", "0.5,0.5"}).code == kExitUsage);
  CHECK(run({"study", "--family", "cap", "--format", "xml"}).code == kExitUsage);
  CHECK(run({"analyze"}).code == kExitUsage);
}

TEST_CASE("schedule parsing") {
  const ScheduleSpec s = parse_schedule("0.25,0.1,7");
  CHECK(s.start == 0.25);
  CHECK(s.factor == 0.1);
  CHECK(s.count == 7);
  CHECK_THROWS_AS(parse_schedule("a,b,c"), std::invalid_argument);
  CHECK_THROWS_AS(parse_schedule("1,0.5,3,4"), std::invalid_argument);
  CHECK_THROWS_AS(parse_schedule("1,0.5,0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_schedule("1,0.5,2x"), std::invalid_argument);
}

TEST_CASE("analyze exit codes") {
  TempFile cube("cube.mesh", to_string(kuhn_cube_mesh(3)));
  const Run ok = run({"analyze", "--input", cube.path(), "--gamma0", "1.6"});
  CHECK(ok.code == kExitPass);
  CHECK(ok.out.find("result: PASS") != std::string::npos);

  std::mt19937_64 rng(0);
  TempFile cap("cap.mesh", to_string(mesh_from_simplices({family_member(FamilyName::Cap, 3, 1e-5, rng)})));
  const Run bad = run({"analyze", "--input", cap.path()});
  CHECK(bad.code == kExitViolation);
  CHECK(bad.out.find("violated") != std::string::npos);

  TempFile broken("broken.mesh", "dim 3\nvertices 2\n0 0 0\n1 1\n");
  const Run malformed = run({"analyze", "--input", broken.path()});
  CHECK(malformed.code == kExitUsage);
  CHECK(malformed.err.find("line 4") != std::string::npos);
  CHECK(run({"analyze", "--input", "/nonexistent/file.mesh"}).code == kExitUsage);
  CHECK(run({"analyze", "--input", cube.path(), "--gamma0", "4"}).code == kExitUsage);

  SimplicialMesh hanging = kuhn_cube_mesh(2);
  hanging.vertices.conservativeResize(Eigen::NoChange, 5);
  hanging.vertices.col(4) = Eigen::Vector2d(0.5, 0.5);
  hanging.elements[0] = {0, 1, 4};
  hanging.elements.push_back({1, 3, 4});
  TempFile h("hanging.mesh", to_string(hanging));
  const Run nc = run({"analyze", "--input", h.path(), "--format", "json"});
  CHECK(nc.code == kExitViolation);
  const auto j = nlohmann::json::parse(nc.out);
  CHECK(j["conforming"] == false);
  CHECK(j["violations"].size() >= 1);

  const Run csv = run({"analyze", "--input", cube.path(), "--format", "csv", "--gamma0", "1.6"});
  CHECK(csv.code == kExitPass);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 7);
}

TEST_CASE("generate writes a parseable mesh") {
  const Run g = run({"generate", "--family", "path", "--dim", "4", "--schedule", "0.5,0.5,3"});
  CHECK(g.code == kExitPass);
  const SimplicialMesh m = parse_mesh_string(g.out);
  CHECK(m.dim == 4);
  CHECK(m.num_elements() == 3);

  TempFile file("kuhn.mesh");
  CHECK(run({"generate", "--family", "kuhn", "--dim", "3", "--cells", "2", "--output", file.path()}).code == 0);
  CHECK(read_mesh_file(file.path()).num_elements() == 48);
}

TEST_CASE("study output") {
  const Run csv = run({"study", "--family", "cap", "--dim", "3"});
  CHECK(csv.code == kExitPass);
  std::istringstream in(csv.out);
  const auto rows = read_csv(in);
  CHECK(rows.size() == 20);
  CHECK(csv.err.find("co-degeneration of edge sine and dihedral angle: detected") != std::string::npos);
  CHECK(csv.err.find("flat dihedral implies small edge sine: holds") != std::string::npos);

  CHECK(run({"study", "--family", "cap", "--dim", "3"}).out == csv.out);

  const Run js = run({"study", "--family", "cap", "--dim", "3", "--format", "json"});
  CHECK(js.code == kExitPass);
  const auto j = nlohmann::json::parse(js.out);
  REQUIRE(j["rows"].size() == rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = j["rows"][k];
    CHECK(r["eps"].get<double>() == rows[k].eps);
    CHECK(r["min_vertex_sine"].get<double>() == rows[k].min_vertex_sine);
    CHECK(r["best_edge_sine"].get<double>() == rows[k].best_edge_sine);
    CHECK(r["max_dihedral"].get<double>() == rows[k].max_dihedral);
    CHECK(r["jamet_theta"].get<double>() == rows[k].jamet_theta);
    CHECK(r["interp_ratio"].get<double>() == rows[k].interp_ratio);
  }
  CHECK(j["family"] == "cap");

  TempFile a("study_a.csv"), b("study_b.csv");
  const Run fa = run({"study", "--family", "random", "--dim", "4", "--seed", "17", "--output", a.path()});
  run({"study", "--family", "random", "--dim", "4", "--seed", "17", "--output", b.path()});
  CHECK(fa.out.find("flat dihedral implies small edge sine") != std::string::npos);
  CHECK(a.read() == b.read());
  CHECK_FALSE(a.read().empty());

  const Run text = run({"study", "--family", "path", "--dim", "3", "--format", "text", "--schedule", "0.5,0.5,4"});
  CHECK(text.code == kExitPass);
  CHECK(text.out.find("family path") == 0);
}

TEST_CASE("check-identities") {
  CHECK(run({"check-identities", "--dim", "4", "--trials", "200"}).code == kExitPass);
  const Run two = run({"check-identities", "--dim", "2", "--trials", "200", "--format", "json"});
  CHECK(two.code == kExitPass);
  const auto j = nlohmann::json::parse(two.out);
  CHECK(j["results"].size() == 5);
  for (const auto& r : j["results"]) CHECK(r["passed"] == true);
  CHECK(run({"check-identities", "--dim", "7"}).code == kExitUsage);
  CHECK(run({"check-identities", "--dim", "1"}).code == kExitUsage);
  CHECK(run({"check-identities", "--trials", "0"}).code == kExitUsage);
}

TEST_CASE("interp-study") {
  const Run r = run({"interp-study", "--family", "sliver", "--dim", "3", "--schedule", "0.5,0.5,6"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.rfind("eps,diameter,interp_ratio,sup_value_err,sup_gradient_err\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 7);
  const Run j = run({"interp-study", "--family", "sliver", "--dim", "3", "--schedule", "0.5,0.5,6", "--format", "json"});
  CHECK(nlohmann::json::parse(j.out)["rows"].size() == 6);
}
