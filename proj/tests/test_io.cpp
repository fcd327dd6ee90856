#include <catch_amalgamated.hpp>

#include "knotlight/errors.hpp"
#include "knotlight/geometry.hpp"
#include "knotlight/io.hpp"
#include "knotlight/topology.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>

using namespace knotlight;
namespace fs = std::filesystem;

namespace {
fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "knotlight_io_test";
  fs::create_directories(dir);
  return dir / name;
}
}  // namespace

TEST_CASE("numbers round-trip") {
  for (double v : {0.1, 1.0 / 3.0, -2.718281828459045, 6.02214076e23, 2.2250738585072014e-308}) CHECK(std::stod(io::num(v)) == v);
}

TEST_CASE("sample rows") {
  const SpacetimePoint pt{0, 0, 0, 0};
  const std::string row = io::sample_row(pt, eval_hopfion(pt));
  CHECK(row == "0,0,0,0,-1,0,0,0,1,0,0,0,-1,1");
  CHECK(std::string(io::kSampleHeader) == "t,x,y,z,Ex,Ey,Ez,Bx,By,Bz,Sx,Sy,Sz,u");
}

TEST_CASE("polyline round trip preserves linking exactly") {
  const KnotParams kp(2, 3);
  const auto a = core_curve({kp, CoreSign::Plus, 0}, 400);
  const auto b = core_curve({kp, CoreSign::Minus, 0}, 400);
  io::write_atomic(scratch("a.csv"), io::polyline_csv(a));
  io::write_atomic(scratch("b.csv"), io::polyline_csv(b));
  const auto ra = io::read_polyline(scratch("a.csv"));
  const auto rb = io::read_polyline(scratch("b.csv"));
  REQUIRE(ra.size() == a.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(ra[i] == a[i]);
  CHECK(gauss_linking(ClosedCurve(ra), ClosedCurve(rb)) == gauss_linking(ClosedCurve(a), ClosedCurve(b)));
  CHECK_FALSE(fs::exists(scratch("a.csv.tmp")));
}

TEST_CASE("polyline arc length column") {
  const std::string csv = io::polyline_csv({{0, 0, 0}, {3, 4, 0}, {3, 4, 1}});
  CHECK(csv == "s,x,y,z\n0,0,0,0\n5,3,4,0\n6,3,4,1\n");
}

TEST_CASE("reader errors") {
  CHECK_THROWS_AS(io::read_polyline(scratch("missing.csv")), Error);
  io::write_atomic(scratch("bad.csv"), "s,x,y,z\n0,1,2\n");
  CHECK_THROWS_AS(io::read_polyline(scratch("bad.csv")), Error);
  io::write_atomic(scratch("seeds.csv"), "x,y,z\n0.5,0.2,0.1\n1,2,3\n");
  CHECK(io::read_seeds(scratch("seeds.csv")).size() == 2);
  CHECK_THROWS_AS(io::write_atomic("/nonexistent-dir/x.csv", "x"), Error);
}

TEST_CASE("file names") {
  CHECK(io::polyline_filename("coreB_p2q3", 0, true) == "coreB_p2q3_k0_plus.csv");
  CHECK(io::polyline_filename("t", 1, false) == "t_k1_minus.csv");
}

TEST_CASE("vtk polydata") {
  const std::string vtk = io::vtk_polylines({{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}}, "tri");
  CHECK(vtk.find("DATASET POLYDATA") != std::string::npos);
  CHECK(vtk.find("POINTS 3 double") != std::string::npos);
  CHECK(vtk.find("LINES 1 5\n4 0 1 2 0") != std::string::npos);
}

TEST_CASE("report lines") {
  CheckReport r = make_report("nullity", 10, 1e-16, 1e-10);
  r.kp = "2,3";
  const auto j = nlohmann::json::parse(io::report_line(r));
  CHECK(j["check"] == "nullity");
  CHECK(j["samples"] == 10);
  CHECK(j["pass"] == true);
  CHECK(j["max_residual"].get<double>() == 1e-16);
  CHECK(j["kp"] == "2,3");
  const auto inf = nlohmann::json::parse(io::report_line(make_report("x", 1, INFINITY, 1.0)));
  CHECK(inf["max_residual"].is_null());
  CHECK(inf["pass"] == false);
}
