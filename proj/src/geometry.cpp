#include "knotlight/geometry.hpp"

#include "knotlight/errors.hpp"

#include <cmath>
#include <numbers>

namespace knotlight {

S3Point stereographic(const Vec3& x) {
  const double r2 = x.squaredNorm();
  const double inv = 1.0 / (r2 + 1.0);
  return {cplx{r2 - 1.0, 2.0 * x.z()} * inv, cplx{2.0 * x.x(), -2.0 * x.y()} * inv};
}

Vec3 inverse_stereographic(const S3Point& s) {
  const double denom = 1.0 - s.u.real();
  if (std::abs(denom) < 1e-12) {
    throw Error(ErrorKind::PointAtInfinity, "u = 1 is the image of infinity");
  }
  const double r2 = (1.0 + s.u.real()) / denom;
  const double half = 0.5 * (r2 + 1.0);
  return {s.v.real() * half, -s.v.imag() * half, s.u.imag() * half};
}

double psi(const KnotParams& kp, const SpacetimePoint& pt, FieldKind which) {
  const BatemanEval be = eval_alpha_beta(pt);
  const cplx w = ipow(be.alpha, kp.p()) * ipow(be.beta, kp.q());
  return which == FieldKind::E ? w.imag() : w.real();
}

double psi_extremes(const KnotParams& kp) {
  const double p = kp.p();
  const double q = kp.q();
  // logs keep large exponents finite
  return std::exp(0.5 * (p * std::log(p) + q * std::log(q) - (p + q) * std::log(p + q)));
}

CorePoint core_curve_point(const CoreCurveSpec& spec, double theta) {
  using std::numbers::pi;
  const int g = spec.kp.gcd();
  if (spec.k < 0 || spec.k >= g) {
    throw Error(ErrorKind::InvalidArgument, "core component index out of range");
  }
  const double p = spec.kp.p();
  const double q = spec.kp.q();
  const double pr = p / g;
  const double qr = q / g;
  const double sign = spec.sign == CoreSign::Plus ? 1.0 : -1.0;
  const double shift = spec.field == FieldKind::E ? pi / (2.0 * q) : 0.0;

  const double phase_alpha = qr * theta;
  const double phase_beta = -pr * theta + (2.0 * pi * spec.k - pi / 2.0 + sign * pi / 2.0) / q + shift;
  const S3Point s{std::polar(std::sqrt(p / (p + q)), phase_alpha),
                  std::polar(std::sqrt(q / (p + q)), phase_beta)};
  return {s, inverse_stereographic(s)};
}

std::vector<Vec3> core_curve(const CoreCurveSpec& spec, int n) {
  std::vector<Vec3> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    out.push_back(core_curve_point(spec, 2.0 * std::numbers::pi * i / n).position);
  }
  return out;
}

CoreTaxonomy core_component_count(const KnotParams& kp) {
  const int g = kp.gcd();
  CoreTaxonomy tax;
  tax.count = 2 * g;
  tax.reduced_p = kp.p() / g;
  tax.reduced_q = kp.q() / g;
  tax.kind = (tax.reduced_p == 1 || tax.reduced_q == 1) ? CoreKind::Ring : CoreKind::TorusKnot;
  return tax;
}

Vec3 rotate_z(const Vec3& x, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * x.x() - s * x.y(), s * x.x() + c * x.y(), x.z()};
}

}  // namespace knotlight
