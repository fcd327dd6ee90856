#pragma once

#include "knotlight/spacetime.hpp"
#include "knotlight/verification.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace knotlight::io {

/// Double with 17 significant digits (round-trips exactly).
std::string num(double v);

/// Writes via a sibling temporary file and rename. Throws Error(Io).
void write_atomic(const std::filesystem::path& path, const std::string& contents);

inline constexpr const char* kSampleHeader = "t,x,y,z,Ex,Ey,Ez,Bx,By,Bz,Sx,Sy,Sz,u";

/// One CSV row (no newline) for the sample format.
std::string sample_row(const SpacetimePoint& pt, const RSValue& v);

/// "s,x,y,z" polyline with cumulative arc length; the curve is written open
/// (closure is implied by the reader).
std::string polyline_csv(const std::vector<Vec3>& points);
std::vector<Vec3> read_polyline(const std::filesystem::path& path);

/// Seeds file: rows of x,y,z; an optional non-numeric header line is skipped.
std::vector<Vec3> read_seeds(const std::filesystem::path& path);

/// Legacy ASCII VTK polydata with one polyline per curve.
std::string vtk_polylines(const std::vector<std::vector<Vec3>>& curves, const std::string& title);

/// `<tag>_k<k>_<plus|minus>.csv`
std::string polyline_filename(const std::string& tag, int k, bool plus);

/// JSON-lines object for one check report.
std::string report_line(const CheckReport& r);

}  // namespace knotlight::io
