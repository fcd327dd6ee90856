#include "knotlight/spacetime.hpp"

#include "knotlight/errors.hpp"

#include <cmath>

namespace knotlight {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateSpinor: return "DegenerateSpinor";
    case ErrorKind::AsymmetricInput: return "AsymmetricInput";
    case ErrorKind::PointAtInfinity: return "PointAtInfinity";
    case ErrorKind::StagnationAtSeed: return "StagnationAtSeed";
    case ErrorKind::Stagnation: return "Stagnation";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::CurvesTooClose: return "CurvesTooClose";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NonIntegerWinding: return "NonIntegerWinding";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

bool SpacetimePoint::finite() const {
  return std::isfinite(t) && std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
}

SpacetimePoint SpacetimePoint::shifted(int axis, double h) const {
  SpacetimePoint p = *this;
  switch (axis) {
    case 0: p.t += h; break;
    case 1: p.x += h; break;
    case 2: p.y += h; break;
    case 3: p.z += h; break;
    default: break;
  }
  return p;
}

Complex3 cross(const Complex3& a, const Complex3& b) {
  return {a.y() * b.z() - a.z() * b.y(),
          a.z() * b.x() - a.x() * b.z(),
          a.x() * b.y() - a.y() * b.x()};
}

cplx dot(const Complex3& a, const Complex3& b) {
  return a.x() * b.x() + a.y() * b.y() + a.z() * b.z();
}

RSValue rs_decompose(const Complex3& F) {
  RSValue v;
  v.F = F;
  v.E = F.real();
  v.B = F.imag();
  v.S = v.E.cross(v.B);
  v.u = 0.5 * (v.E.squaredNorm() + v.B.squaredNorm());
  return v;
}

}  // namespace knotlight
