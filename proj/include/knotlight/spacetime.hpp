#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <complex>

namespace knotlight {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Complex3 = Eigen::Vector3cd;

inline constexpr cplx I{0.0, 1.0};

/// Event in Minkowski space, natural units (c = 1).
struct SpacetimePoint {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  SpacetimePoint() = default;
  SpacetimePoint(double t_, double x_, double y_, double z_) : t(t_), x(x_), y(y_), z(z_) {}
  SpacetimePoint(double t_, const Vec3& r) : t(t_), x(r.x()), y(r.y()), z(r.z()) {}

  Vec3 position() const { return {x, y, z}; }
  double r2() const { return x * x + y * y + z * z; }
  bool finite() const;

  /// Shift coordinate `axis` (0 = t, 1 = x, 2 = y, 3 = z) by `h`.
  SpacetimePoint shifted(int axis, double h) const;
};

/// Component-wise complex cross product (no conjugation).
Complex3 cross(const Complex3& a, const Complex3& b);

/// Unconjugated bilinear product a1 b1 + a2 b2 + a3 b3.
cplx dot(const Complex3& a, const Complex3& b);

/// Riemann-Silberstein value F = E + iB with its derived real views.
struct RSValue {
  Complex3 F = Complex3::Zero();
  Vec3 E = Vec3::Zero();
  Vec3 B = Vec3::Zero();
  Vec3 S = Vec3::Zero();  // Poynting vector E x B
  double u = 0.0;         // energy density (|E|^2 + |B|^2) / 2
};

RSValue rs_decompose(const Complex3& F);

}  // namespace knotlight
