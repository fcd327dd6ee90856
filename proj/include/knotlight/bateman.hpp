#pragma once

#include "knotlight/spacetime.hpp"

#include <functional>
#include <string>

namespace knotlight {

/// Exponents of the monomial pair (f, g) = (alpha^p, beta^q).
class KnotParams {
 public:
  KnotParams(int p, int q);

  int p() const { return p_; }
  int q() const { return q_; }
  int gcd() const;

  friend bool operator==(const KnotParams&, const KnotParams&) = default;

 private:
  int p_;
  int q_;
};

/// Hopfion building blocks a = x - iy, b = t - i - z, d = r^2 - (t - i)^2.
struct ABD {
  cplx a;
  cplx b;
  cplx d;
};

ABD eval_abd(const SpacetimePoint& pt);

/// A pair of complex scalars with their first spacetime derivatives.
struct BatemanEval {
  cplx alpha;
  cplx beta;
  cplx dt_alpha;
  cplx dt_beta;
  Complex3 grad_alpha = Complex3::Zero();
  Complex3 grad_beta = Complex3::Zero();
};

/// The knotted pair alpha = (r^2 - t^2 - 1 + 2iz)/d, beta = 2(x - iy)/d.
/// Derivatives are closed-form quotient-rule expressions.
BatemanEval eval_alpha_beta(const SpacetimePoint& pt);

/// Plane-wave pair alpha = z - t, beta = x + iy.
BatemanEval plane_wave_pair(const SpacetimePoint& pt);

/// z^n for integer n >= 0 by repeated multiplication (no branch cuts).
cplx ipow(cplx z, int n);

/// F = grad(alpha^p) x grad(beta^q) = p q alpha^(p-1) beta^(q-1) grad(alpha) x grad(beta).
RSValue eval_knotted_field(const KnotParams& kp, const SpacetimePoint& pt);
Complex3 knotted_field(const KnotParams& kp, const SpacetimePoint& pt);

/// Hopfion closed form F = d^-3 (b^2 - a^2, -i(a^2 + b^2), 2ab).
RSValue eval_hopfion(const SpacetimePoint& pt);
Complex3 hopfion_field(const SpacetimePoint& pt);

/// The (1,1) member of the knotted family equals this factor times the
/// Hopfion closed form. Measured by ratio at random points, then pinned.
inline constexpr double kHopfionFamilyFactor = 4.0;

/// Circularly polarised plane wave F = (x + i y) e^{i(z - t)}.
RSValue eval_plane_wave(const SpacetimePoint& pt);
Complex3 plane_wave_field(const SpacetimePoint& pt);

/// Complex potential C = alpha^p grad(beta^q), with curl C = F.
/// Re C is a vector potential for E, Im C for B.
Complex3 eval_potential(const KnotParams& kp, const SpacetimePoint& pt);

/// || grad a x grad b - i (d_t a grad b - d_t b grad a) || for any pair.
double bateman_constraint_residual(const BatemanEval& be);
double bateman_constraint_residual(const SpacetimePoint& pt);

struct NontrivialityResidual {
  double alpha;
  double beta;
};

/// |d_t a ((d_t a)^2 - grad a . grad a)| for each scalar (unconjugated dot).
NontrivialityResidual nontriviality_residual(const BatemanEval& be);
NontrivialityResidual nontriviality_residual(const SpacetimePoint& pt);

/// A named null-field construction, evaluated pointwise.
using FieldFn = std::function<Complex3(const SpacetimePoint&)>;

struct Construction {
  std::string name;
  FieldFn field;
};

Construction plane_wave_construction();
Construction hopfion_construction();
Construction knotted_construction(const KnotParams& kp);

}  // namespace knotlight
