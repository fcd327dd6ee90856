#include "knotlight/io.hpp"

#include "knotlight/errors.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace knotlight::io {

namespace fs = std::filesystem;

std::string num(double v) { return fmt::format("{:.17g}", v); }

void write_atomic(const fs::path& path, const std::string& contents) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot open " + tmp.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::Io, "cannot rename onto " + path.string());
  }
}

std::string sample_row(const SpacetimePoint& pt, const RSValue& v) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}", num(pt.t), num(pt.x), num(pt.y), num(pt.z),
                     num(v.E.x()), num(v.E.y()), num(v.E.z()), num(v.B.x()), num(v.B.y()), num(v.B.z()),
                     num(v.S.x()), num(v.S.y()), num(v.S.z()), num(v.u));
}

std::string polyline_csv(const std::vector<Vec3>& points) {
  std::string out = "s,x,y,z\n";
  double s = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0) s += (points[i] - points[i - 1]).norm();
    const Vec3& p = points[i];
    out += fmt::format("{},{},{},{}\n", num(s), num(p.x()), num(p.y()), num(p.z()));
  }
  return out;
}

namespace {

std::vector<std::vector<double>> read_numeric_rows(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t", used) != std::string::npos) numeric = false;
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;  // header
      }
      throw Error(ErrorKind::Io, "malformed row in " + path.string() + ": " + line);
    }
    first = false;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<Vec3> read_polyline(const fs::path& path) {
  std::vector<Vec3> out;
  for (const auto& r : read_numeric_rows(path)) {
    if (r.size() != 4) throw Error(ErrorKind::Io, "polyline rows need s,x,y,z in " + path.string());
    out.emplace_back(r[1], r[2], r[3]);
  }
  return out;
}

std::vector<Vec3> read_seeds(const fs::path& path) {
  std::vector<Vec3> out;
  for (const auto& r : read_numeric_rows(path)) {
    if (r.size() != 3) throw Error(ErrorKind::Io, "seed rows need x,y,z in " + path.string());
    out.emplace_back(r[0], r[1], r[2]);
  }
  return out;
}

std::string vtk_polylines(const std::vector<std::vector<Vec3>>& curves, const std::string& title) {
  std::size_t n = 0;
  for (const auto& c : curves) n += c.size();
  std::string out = "# vtk DataFile Version 3.0\n" + title + "\nASCII\nDATASET POLYDATA\n";
  out += fmt::format("POINTS {} double\n", n);
  for (const auto& c : curves)
    for (const Vec3& p : c) out += fmt::format("{} {} {}\n", num(p.x()), num(p.y()), num(p.z()));
  // closed: repeat the first index of each curve
  std::size_t size = 0;
  for (const auto& c : curves) size += c.size() + 2;
  out += fmt::format("LINES {} {}\n", curves.size(), size);
  std::size_t base = 0;
  for (const auto& c : curves) {
    out += std::to_string(c.size() + 1);
    for (std::size_t i = 0; i < c.size(); ++i) out += " " + std::to_string(base + i);
    out += " " + std::to_string(base) + "\n";
    base += c.size();
  }
  return out;
}

std::string polyline_filename(const std::string& tag, int k, bool plus) {
  return fmt::format("{}_k{}_{}.csv", tag, k, plus ? "plus" : "minus");
}

std::string report_line(const CheckReport& r) {
  // JSON has no infinity; non-finite residuals are written as null.
  nlohmann::ordered_json j;
  j["check"] = r.check;
  j["samples"] = r.samples;
  j["max_residual"] = std::isfinite(r.max_residual) ? nlohmann::ordered_json(r.max_residual) : nlohmann::ordered_json(nullptr);
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  j["expect_fail"] = r.expect_fail;
  if (!r.kp.empty()) j["kp"] = r.kp;
  j["t_min"] = r.t_min;
  j["t_max"] = r.t_max;
  j["seed"] = r.seed;
  return j.dump();
}

}  // namespace knotlight::io
