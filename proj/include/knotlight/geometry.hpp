#pragma once

#include "knotlight/bateman.hpp"
#include "knotlight/spacetime.hpp"

#include <vector>

namespace knotlight {

/// Point on the unit 3-sphere in C^2, |u|^2 + |v|^2 = 1.
struct S3Point {
  cplx u;
  cplx v;
};

/// u = ((r^2 - 1) + 2iz)/(r^2 + 1), v = 2(x - iy)/(r^2 + 1).
S3Point stereographic(const Vec3& x);

/// Inverse of `stereographic`. Throws PointAtInfinity near u = 1.
Vec3 inverse_stereographic(const S3Point& s);

enum class FieldKind { E, B, S };

/// Psi_B = Re(alpha^p beta^q), Psi_E = Im(alpha^p beta^q). The S selector maps to Psi_B.
double psi(const KnotParams& kp, const SpacetimePoint& pt, FieldKind which);

/// Extreme value sqrt(p^p q^q / (p+q)^(p+q)) of both Psi_B and Psi_E.
double psi_extremes(const KnotParams& kp);

enum class CoreSign { Plus, Minus };

struct CoreCurveSpec {
  KnotParams kp;
  CoreSign sign = CoreSign::Plus;
  int k = 0;                       // component index in [0, gcd(p, q))
  FieldKind field = FieldKind::B;  // E cores are the Psi_E extrema
};

struct CorePoint {
  S3Point s3;
  Vec3 position;
};

/// Point on an extremum locus of Psi at t = 0:
///   alpha = sqrt(p/(p+q)) e^{i q' theta},
///   beta  = sqrt(q/(p+q)) e^{i(-p' theta + (2 pi k - pi/2 +- pi/2)/q + shift)},
/// with (p', q') = (p, q)/gcd and shift = pi/(2q) for E cores, 0 for B cores.
/// For coprime (p, q) this is the classical K^{+-} parametrisation; for
/// gcd > 1 each k selects a distinct component traversed once per 2 pi.
CorePoint core_curve_point(const CoreCurveSpec& spec, double theta);

/// n equally spaced samples of the component, theta in [0, 2 pi).
std::vector<Vec3> core_curve(const CoreCurveSpec& spec, int n);

enum class CoreKind { TorusKnot, Ring };

struct CoreTaxonomy {
  int count = 0;        // total number of core curves (K^+ and K^-)
  int reduced_p = 0;
  int reduced_q = 0;
  CoreKind kind = CoreKind::Ring;
};

CoreTaxonomy core_component_count(const KnotParams& kp);

/// Rotation about the z axis by `angle`.
Vec3 rotate_z(const Vec3& x, double angle);

}  // namespace knotlight
