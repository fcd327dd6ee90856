#pragma once

#include "knotlight/bateman.hpp"
#include "knotlight/spacetime.hpp"

#include <Eigen/Core>
#include <array>
#include <functional>

namespace knotlight {

using Spinor2 = Eigen::Vector2cd;
using Matrix2c = Eigen::Matrix2cd;

// Index conventions
// -----------------
// eps_{AB} = eps_{A'B'} = eps^{AB} = [[0, 1], [-1, 0]], so eps * eps = -1.
// Raising: xi^A = eps^{AB} xi_B, i.e. xi^0 = xi_1, xi^1 = -xi_0.
// Infeld-van der Waerden symbols g^{mu AA'} = (1, -sx, sy, -sz) / sqrt(2),
// mu = (t, x, y, z); row index A, column index A'.
// Field extraction from F^{mu nu}: E_i = F^{i0}, B = -(F^{23}, F^{31}, F^{12}).
// This pairing is the one that reproduces the Hopfion closed form exactly.

const Matrix2c& epsilon();
const std::array<Matrix2c, 4>& ivdw_symbols();

/// A null congruence spinor xi_A together with its scale kappa.
struct SpinorScale {
  Spinor2 xi = Spinor2::Zero();
  cplx kappa{0.0, 0.0};
};

/// Symmetric field spinor Phi_AB. Only constructible in symmetric form.
class FieldSpinor {
 public:
  FieldSpinor() = default;
  /// Throws AsymmetricInput unless phi(0,1) == phi(1,0) (relative 1e-12).
  explicit FieldSpinor(const Matrix2c& phi);

  const Matrix2c& matrix() const { return phi_; }
  cplx operator()(int a, int b) const { return phi_(a, b); }

 private:
  Matrix2c phi_ = Matrix2c::Zero();
};

SpinorScale knotted_spinor(const KnotParams& kp, const SpacetimePoint& pt);
SpinorScale hopfion_spinor(const SpacetimePoint& pt);
/// xi = (0, -1), kappa = -e^{-i(z - t)}.
SpinorScale plane_wave_spinor(const SpacetimePoint& pt);

enum class ConversionBranch { Generic, Axial };

struct BatemanSpinor {
  SpinorScale spinor;
  ConversionBranch branch = ConversionBranch::Generic;
};

/// Spinor (xi, kappa) of the bare Bateman field grad(alpha) x grad(beta).
/// Uses the generic branch when its discriminant
/// d_wbar(conj a) d_z(conj b) - d_z(conj a) d_wbar(conj b) is nonzero relative
/// to |grad a||grad b|, and the axial branch otherwise.
/// Throws DegenerateSpinor when both discriminants vanish.
BatemanSpinor bateman_to_spinor(const BatemanEval& be, double tol = 1e-12);

FieldSpinor phi_from(const Spinor2& xi, cplx kappa);
inline FieldSpinor phi_from(const SpinorScale& s) { return phi_from(s.xi, s.kappa); }

/// Phi_AB Phi^AB with Phi^AB = eps^AC eps^BD Phi_CD.
cplx phi_contraction(const FieldSpinor& phi);

/// Real antisymmetric F^{mu nu} = g^{mu AA'} g^{nu BB'} (Phi_AB eps_A'B' + eps_AB conj(Phi_A'B')).
Eigen::Matrix4d field_tensor(const FieldSpinor& phi);

RSValue field_from_phi(const FieldSpinor& phi);
/// Checks symmetry first (AsymmetricInput) and then reconstructs.
RSValue field_from_phi(const Matrix2c& phi);

/// Real null 4-vector xi^mu = g^{mu AA'} xi_A conj(xi_A').
Eigen::Vector4d congruence_vector(const Spinor2& xi);

using SpinorFieldFn = std::function<Spinor2(const SpacetimePoint&)>;
using FieldSpinorFn = std::function<FieldSpinor(const SpacetimePoint&)>;

/// Components (B' = 0, 1) of xi^A xi_B g^{mu BB'} d_mu xi_A, central differences.
Spinor2 gsf_residual(const SpinorFieldFn& spinor_field, const SpacetimePoint& pt,
                     double h = 1e-4);

/// g^{mu AA'} d_mu Phi_AB indexed (A', B), central differences.
Matrix2c spinor_maxwell_residual(const FieldSpinorFn& phi_field, const SpacetimePoint& pt,
                                 double h = 1e-4);

}  // namespace knotlight
