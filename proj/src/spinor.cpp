#include "knotlight/spinor.hpp"

#include "knotlight/errors.hpp"
#include "knotlight/finite_difference.hpp"

#include <cmath>

namespace knotlight {

const Matrix2c& epsilon() {
  static const Matrix2c eps = (Matrix2c() << 0.0, 1.0, -1.0, 0.0).finished();
  return eps;
}

const std::array<Matrix2c, 4>& ivdw_symbols() {
  static const std::array<Matrix2c, 4> g = [] {
    const double s = 1.0 / std::sqrt(2.0);
    Matrix2c id = Matrix2c::Identity();
    Matrix2c sx, sy, sz;
    sx << 0.0, 1.0, 1.0, 0.0;
    sy << 0.0, -I, I, 0.0;
    sz << 1.0, 0.0, 0.0, -1.0;
    return std::array<Matrix2c, 4>{id * s, -sx * s, sy * s, -sz * s};
  }();
  return g;
}

FieldSpinor::FieldSpinor(const Matrix2c& phi) : phi_(phi) {
  const double scale = phi.cwiseAbs().maxCoeff();
  if (std::abs(phi(0, 1) - phi(1, 0)) > 1e-12 * scale) {
    throw Error(ErrorKind::AsymmetricInput, "field spinor must satisfy Phi_01 == Phi_10");
  }
  phi_(1, 0) = phi_(0, 1);
}

SpinorScale hopfion_spinor(const SpacetimePoint& pt) {
  const ABD v = eval_abd(pt);
  const cplx dbar = std::conj(v.d);
  return {Spinor2{-std::conj(v.b), std::conj(v.a)}, 1.0 / (dbar * dbar * dbar)};
}

SpinorScale knotted_spinor(const KnotParams& kp, const SpacetimePoint& pt) {
  const ABD v = eval_abd(pt);
  const BatemanEval be = eval_alpha_beta(pt);
  const cplx dbar = std::conj(v.d);
  const cplx kappa = 4.0 * kp.p() * kp.q() * ipow(std::conj(be.alpha), kp.p() - 1) *
                     ipow(std::conj(be.beta), kp.q() - 1) / (dbar * dbar * dbar);
  return {Spinor2{-std::conj(v.b), std::conj(v.a)}, kappa};
}

SpinorScale plane_wave_spinor(const SpacetimePoint& pt) {
  return {Spinor2{0.0, -1.0}, -std::exp(-I * (pt.z - pt.t))};
}

BatemanSpinor bateman_to_spinor(const BatemanEval& be, double tol) {
  // Derivatives of the conjugates: d_k conj(f) = conj(d_k f) for real coordinates.
  const Complex3 ga = be.grad_alpha.conjugate();
  const Complex3 gb = be.grad_beta.conjugate();
  auto d_w = [](const Complex3& g) { return 0.5 * (g.x() - I * g.y()); };
  auto d_wbar = [](const Complex3& g) { return 0.5 * (g.x() + I * g.y()); };
  auto d_z = [](const Complex3& g) { return g.z(); };

  const double scale = std::max(be.grad_alpha.norm() * be.grad_beta.norm(), 1e-300);

  const cplx generic = d_wbar(ga) * d_z(gb) - d_z(ga) * d_wbar(gb);
  if (std::abs(generic) > tol * scale) {
    const cplx top = d_w(ga) * d_wbar(gb) - d_wbar(ga) * d_w(gb);
    return {{Spinor2{top, generic}, I / generic}, ConversionBranch::Generic};
  }
  const cplx axial = d_w(ga) * d_z(gb) - d_z(ga) * d_w(gb);
  if (std::abs(axial) > tol * scale) {
    return {{Spinor2{axial, 0.0}, I / axial}, ConversionBranch::Axial};
  }
  throw Error(ErrorKind::DegenerateSpinor, "both conversion discriminants vanish");
}

FieldSpinor phi_from(const Spinor2& xi, cplx kappa) {
  Matrix2c phi = kappa * xi * xi.transpose();
  phi(1, 0) = phi(0, 1);
  return FieldSpinor(phi);
}

cplx phi_contraction(const FieldSpinor& phi) {
  const Matrix2c& eps = epsilon();
  const Matrix2c upper = eps * phi.matrix() * eps.transpose();
  return (phi.matrix().cwiseProduct(upper)).sum();
}

Eigen::Matrix4d field_tensor(const FieldSpinor& phi) {
  const auto& g = ivdw_symbols();
  const Matrix2c& eps = epsilon();
  const Matrix2c& p = phi.matrix();
  const Matrix2c pbar = p.conjugate();
  Eigen::Matrix4d out = Eigen::Matrix4d::Zero();
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = mu + 1; nu < 4; ++nu) {
      cplx s{0.0, 0.0};
      for (int A = 0; A < 2; ++A)
        for (int Ap = 0; Ap < 2; ++Ap)
          for (int B = 0; B < 2; ++B)
            for (int Bp = 0; Bp < 2; ++Bp)
              s += g[mu](A, Ap) * g[nu](B, Bp) * (p(A, B) * eps(Ap, Bp) + eps(A, B) * pbar(Ap, Bp));
      out(mu, nu) = s.real();
      out(nu, mu) = -s.real();
    }
  }
  return out;
}

RSValue field_from_phi(const FieldSpinor& phi) {
  const Eigen::Matrix4d f = field_tensor(phi);
  const Vec3 E{f(1, 0), f(2, 0), f(3, 0)};
  const Vec3 B{-f(2, 3), -f(3, 1), -f(1, 2)};
  return rs_decompose(E.cast<cplx>() + I * B.cast<cplx>());
}

RSValue field_from_phi(const Matrix2c& phi) { return field_from_phi(FieldSpinor(phi)); }

Eigen::Vector4d congruence_vector(const Spinor2& xi) {
  const auto& g = ivdw_symbols();
  Eigen::Vector4d out;
  for (int mu = 0; mu < 4; ++mu) {
    out[mu] = (xi.transpose() * g[mu] * xi.conjugate()).value().real();
  }
  return out;
}

Spinor2 gsf_residual(const SpinorFieldFn& spinor_field, const SpacetimePoint& pt, double h) {
  const auto& g = ivdw_symbols();
  const Spinor2 xi = spinor_field(pt);
  const Spinor2 xi_up = epsilon() * xi;
  const auto dxi = spacetime_gradient(
      [&](const SpacetimePoint& p) -> Spinor2 { return spinor_field(p); }, pt, h);
  Spinor2 res = Spinor2::Zero();
  for (int Bp = 0; Bp < 2; ++Bp)
    for (int mu = 0; mu < 4; ++mu)
      for (int A = 0; A < 2; ++A)
        for (int B = 0; B < 2; ++B) res[Bp] += xi_up[A] * xi[B] * g[mu](B, Bp) * dxi[mu][A];
  return res;
}

Matrix2c spinor_maxwell_residual(const FieldSpinorFn& phi_field, const SpacetimePoint& pt,
                                 double h) {
  const auto& g = ivdw_symbols();
  const auto dphi = spacetime_gradient(
      [&](const SpacetimePoint& p) -> Matrix2c { return phi_field(p).matrix(); }, pt, h);
  Matrix2c res = Matrix2c::Zero();
  for (int Ap = 0; Ap < 2; ++Ap)
    for (int B = 0; B < 2; ++B)
      for (int mu = 0; mu < 4; ++mu)
        for (int A = 0; A < 2; ++A) res(Ap, B) += g[mu](A, Ap) * dphi[mu](A, B);
  return res;
}

}  // namespace knotlight
