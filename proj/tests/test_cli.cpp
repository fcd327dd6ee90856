#include <catch_amalgamated.hpp>

#include "cli.hpp"

#include "knotlight/io.hpp"
#include "knotlight/topology.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

using namespace knotlight;
namespace fs = std::filesystem;

namespace {

fs::path workdir() {
  const char* env = std::getenv("KNOTLIGHT_TMP");
  fs::path d = env ? fs::path(env) : fs::temp_directory_path() / "knotlight_cli_test";
  fs::create_directories(d);
  return d;
}

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "knotlight");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli::run(int(argv.size()), argv.data());
}

std::vector<std::string> lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string s(const fs::path& p) { return p.string(); }

}  // namespace

TEST_CASE("sample writes the documented CSV") {
  const fs::path out = workdir() / "sample.csv";
  REQUIRE(run({"sample", "--p", "2", "--q", "3", "--t", "0", "--grid", "-3:3:8", "--out", s(out)}) == 0);
  const auto l = lines(out);
  REQUIRE(l.size() == 1 + 8 * 8 * 8);
  CHECK(l[0] == "t,x,y,z,Ex,Ey,Ez,Bx,By,Bz,Sx,Sy,Sz,u");
  CHECK(l[1].rfind("0,-3,-3,-3,", 0) == 0);
}

TEST_CASE("hopfion sample at the origin") {
  const fs::path out = workdir() / "hopfion.csv";
  REQUIRE(run({"sample", "--construction", "hopfion", "--grid", "0:0:1", "--out", s(out)}) == 0);
  const auto l = lines(out);
  REQUIRE(l.size() == 2);
  CHECK(l[1] == "0,0,0,0,-1,0,0,0,1,0,0,0,-1,1");
}

TEST_CASE("config errors exit with 2") {
  CHECK(run({"sample", "--grid", "-1:1:0"}) == 2);
  CHECK(run({"sample", "--grid", "nonsense"}) == 2);
  CHECK(run({"sample", "--p", "0", "--grid", "0:1:2"}) == 2);
  CHECK(run({"core", "--p", "0"}) == 2);
  CHECK(run({"trace", "--p", "2", "--q", "3"}) == 2);
  CHECK(run({"trace", "--field", "Q", "--seed", "1,2,3"}) == 2);
  CHECK(run({"verify", "--kp", "2"}) == 2);
  CHECK(run({"invariants", "--n-r", "0"}) == 2);
  CHECK(run({"bogus"}) == 2);
}

TEST_CASE("I/O errors exit with 3") {
  CHECK(run({"sample", "--grid", "0:1:2", "--out", "/nonexistent-dir/x.csv"}) == 3);
  CHECK(run({"link", "/nonexistent-a.csv", "/nonexistent-b.csv"}) == 3);
}

TEST_CASE("core curves and linking through files") {
  const fs::path dir = workdir() / "core22";
  REQUIRE(run({"core", "--p", "2", "--q", "2", "--n", "512", "--out-dir", s(dir)}) == 0);
  int count = 0;
  for (const auto& e : fs::directory_iterator(dir)) count += e.path().extension() == ".csv";
  CHECK(count == 4);
  CHECK(fs::exists(dir / "coreB_p2_q2_k1_minus.csv"));

  const fs::path d23 = workdir() / "core23";
  REQUIRE(run({"core", "--p", "2", "--q", "3", "--out-dir", s(d23)}) == 0);
  const auto a = io::read_polyline(d23 / "coreB_p2_q3_k0_plus.csv");
  const auto b = io::read_polyline(d23 / "coreB_p2_q3_k0_minus.csv");
  CHECK(std::abs(std::abs(gauss_linking(ClosedCurve(a), ClosedCurve(b))) - 6.0) < 1e-2);
  CHECK(run({"link", s(d23 / "coreB_p2_q3_k0_plus.csv"), s(d23 / "coreB_p2_q3_k0_minus.csv")}) == 0);

  REQUIRE(run({"core", "--p", "2", "--q", "3", "--format", "vtk", "--out-dir", s(d23)}) == 0);
  CHECK(fs::exists(d23 / "coreB_p2_q3.vtk"));
}

TEST_CASE("hopfion cores are round circles") {
  const fs::path dir = workdir() / "core11";
  REQUIRE(run({"core", "--p", "1", "--q", "1", "--n", "256", "--out-dir", s(dir)}) == 0);
  for (const char* f : {"coreB_p1_q1_k0_plus.csv", "coreB_p1_q1_k0_minus.csv"}) {
    const auto pts = io::read_polyline(dir / f);
    // discrete curvature from consecutive triples
    double kmin = 1e9, kmax = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Vec3& p0 = pts[(i + pts.size() - 1) % pts.size()];
      const Vec3& p1 = pts[i];
      const Vec3& p2 = pts[(i + 1) % pts.size()];
      const double a = (p1 - p0).norm(), b = (p2 - p1).norm(), c = (p2 - p0).norm();
      const double k = 2.0 * (p1 - p0).cross(p2 - p1).norm() / (a * b * c);
      kmin = std::min(kmin, k);
      kmax = std::max(kmax, k);
    }
    CHECK((kmax - kmin) / kmax < 1e-6);
  }
}

TEST_CASE("trace writes polylines and a summary") {
  const fs::path dir = workdir() / "trace";
  fs::remove_all(dir);
  const fs::path seeds = workdir() / "seeds.csv";
  {
    std::ofstream o(seeds);
    o << "x,y,z\n0.5,0.2,0.1\n0,0,0.5\n";
  }
  // (2,3) core seed, a generic seed, and a zero of B on the z axis
  REQUIRE(run({"trace", "--p", "2", "--q", "3", "--seed", "2.1074910296635316,0,0", "--seeds-file", s(seeds),
               "--out-dir", s(dir), "--arc-length", "80"}) == 0);
  const auto l = lines(dir / "summary.jsonl");
  REQUIRE(l.size() == 3);
  const auto core = nlohmann::json::parse(l[0]);
  CHECK(core["closed"] == true);
  CHECK(std::abs(std::abs(core["windings"][0].get<double>()) - 3.0) < 1e-2);
  CHECK(std::abs(std::abs(core["windings"][1].get<double>()) - 2.0) < 1e-2);
  CHECK(fs::exists(dir / "trace_0.csv"));
  CHECK(nlohmann::json::parse(l[2])["termination"] == "Stagnation");

  CHECK(run({"trace", "--p", "2", "--q", "3", "--seed", "0,0,0.5", "--out-dir", s(dir)}) == 1);
}

TEST_CASE("invariants JSON") {
  const fs::path out = workdir() / "inv.json";
  REQUIRE(run({"invariants", "--p", "2", "--q", "3", "--n-r", "48", "--n-theta", "32", "--n-phi", "32", "--out",
               s(out)}) == 0);
  const auto j = nlohmann::json::parse(lines(out).at(0));
  CHECK(std::abs(j["normalized"]["H_m"].get<double>() - 0.2) < 4e-3);
  CHECK(std::abs(j["normalized"]["P"][2].get<double>() + 0.4) < 8e-3);
  CHECK(j.contains("truncation_estimate"));
  CHECK(j.contains("convention"));
}

TEST_CASE("verify exit codes") {
  const fs::path out = workdir() / "verify.jsonl";
  CHECK(run({"verify", "--kp", "2,3", "--t", "1.3", "--samples", "200", "--no-quadrature", "--out", s(out)}) == 0);
  bool transport = false;
  for (const auto& l : lines(out)) {
    const auto j = nlohmann::json::parse(l);
    if (j["check"] == "psi_transport" && j["t_min"] == 1.3) transport = j["pass"].get<bool>();
  }
  CHECK(transport);
  CHECK(run({"verify", "--kp", "1,1", "--samples", "50", "--no-tracing", "--no-quadrature", "--inject-fault",
             "nullity", "--out", s(out)}) == 1);
}
