#include "knotlight/bateman.hpp"

#include "knotlight/errors.hpp"

#include <cmath>
#include <numeric>

namespace knotlight {

KnotParams::KnotParams(int p, int q) : p_(p), q_(q) {
  if (p < 1 || q < 1) {
    throw Error(ErrorKind::InvalidArgument, "knot exponents must be positive integers");
  }
}

int KnotParams::gcd() const { return std::gcd(p_, q_); }

ABD eval_abd(const SpacetimePoint& pt) {
  const cplx tau{pt.t, -1.0};
  return {cplx{pt.x, -pt.y}, cplx{pt.t - pt.z, -1.0}, pt.r2() - tau * tau};
}

BatemanEval eval_alpha_beta(const SpacetimePoint& pt) {
  const double r2 = pt.r2();
  const cplx d = eval_abd(pt).d;
  const cplx dt_d{-2.0 * pt.t, 2.0};
  const Vec3 grad_d{2.0 * pt.x, 2.0 * pt.y, 2.0 * pt.z};

  const cplx num_alpha{r2 - pt.t * pt.t - 1.0, 2.0 * pt.z};
  const cplx num_beta{2.0 * pt.x, -2.0 * pt.y};
  const cplx inv_d = 1.0 / d;

  BatemanEval be;
  be.alpha = num_alpha * inv_d;
  be.beta = num_beta * inv_d;

  // quotient rule: d(N/d) = (dN - (N/d) dd) / d
  be.dt_alpha = (-2.0 * pt.t - be.alpha * dt_d) * inv_d;
  be.dt_beta = (-be.beta * dt_d) * inv_d;
  const Complex3 grad_num_alpha{2.0 * pt.x, 2.0 * pt.y, cplx{2.0 * pt.z, 2.0}};
  const Complex3 grad_num_beta{2.0, cplx{0.0, -2.0}, 0.0};
  be.grad_alpha = (grad_num_alpha - be.alpha * grad_d.cast<cplx>()) * inv_d;
  be.grad_beta = (grad_num_beta - be.beta * grad_d.cast<cplx>()) * inv_d;
  return be;
}

BatemanEval plane_wave_pair(const SpacetimePoint& pt) {
  BatemanEval be;
  be.alpha = pt.z - pt.t;
  be.beta = cplx{pt.x, pt.y};
  be.dt_alpha = -1.0;
  be.dt_beta = 0.0;
  be.grad_alpha = Complex3{0.0, 0.0, 1.0};
  be.grad_beta = Complex3{1.0, I, 0.0};
  return be;
}

cplx ipow(cplx z, int n) {
  cplx out{1.0, 0.0};
  for (int i = 0; i < n; ++i) out *= z;
  return out;
}

Complex3 knotted_field(const KnotParams& kp, const SpacetimePoint& pt) {
  const BatemanEval be = eval_alpha_beta(pt);
  const cplx h = double(kp.p() * kp.q()) * ipow(be.alpha, kp.p() - 1) * ipow(be.beta, kp.q() - 1);
  return h * cross(be.grad_alpha, be.grad_beta);
}

RSValue eval_knotted_field(const KnotParams& kp, const SpacetimePoint& pt) {
  return rs_decompose(knotted_field(kp, pt));
}

Complex3 hopfion_field(const SpacetimePoint& pt) {
  const ABD v = eval_abd(pt);
  const cplx a2 = v.a * v.a;
  const cplx b2 = v.b * v.b;
  const cplx inv_d3 = 1.0 / (v.d * v.d * v.d);
  return Complex3{b2 - a2, -I * (a2 + b2), 2.0 * v.a * v.b} * inv_d3;
}

RSValue eval_hopfion(const SpacetimePoint& pt) { return rs_decompose(hopfion_field(pt)); }

Complex3 plane_wave_field(const SpacetimePoint& pt) {
  return Complex3{1.0, I, 0.0} * std::exp(I * (pt.z - pt.t));
}

RSValue eval_plane_wave(const SpacetimePoint& pt) { return rs_decompose(plane_wave_field(pt)); }

Complex3 eval_potential(const KnotParams& kp, const SpacetimePoint& pt) {
  const BatemanEval be = eval_alpha_beta(pt);
  return (ipow(be.alpha, kp.p()) * double(kp.q()) * ipow(be.beta, kp.q() - 1)) * be.grad_beta;
}

double bateman_constraint_residual(const BatemanEval& be) {
  const Complex3 lhs = cross(be.grad_alpha, be.grad_beta);
  const Complex3 rhs = I * (be.dt_alpha * be.grad_beta - be.dt_beta * be.grad_alpha);
  return (lhs - rhs).norm();
}

double bateman_constraint_residual(const SpacetimePoint& pt) {
  return bateman_constraint_residual(eval_alpha_beta(pt));
}

NontrivialityResidual nontriviality_residual(const BatemanEval& be) {
  auto one = [](cplx dt, const Complex3& grad) {
    return std::abs(dt * (dt * dt - dot(grad, grad)));
  };
  return {one(be.dt_alpha, be.grad_alpha), one(be.dt_beta, be.grad_beta)};
}

NontrivialityResidual nontriviality_residual(const SpacetimePoint& pt) {
  return nontriviality_residual(eval_alpha_beta(pt));
}

Construction plane_wave_construction() { return {"plane_wave", plane_wave_field}; }

Construction hopfion_construction() { return {"hopfion", hopfion_field}; }

Construction knotted_construction(const KnotParams& kp) {
  return {"knotted(" + std::to_string(kp.p()) + "," + std::to_string(kp.q()) + ")",
          [kp](const SpacetimePoint& pt) { return knotted_field(kp, pt); }};
}

}  // namespace knotlight
