#pragma once

#include "knotlight/bateman.hpp"
#include "knotlight/conserved.hpp"
#include "knotlight/spinor.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace knotlight {

/// Outcome of one residual check. `pass` is exactly `max_residual <= tolerance`.
/// Negative controls carry `expect_fail`; the harness is healthy when they fail.
struct CheckReport {
  std::string check;
  long samples = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool expect_fail = false;
  std::string kp;  // "p,q" or empty
  double t_min = 0.0;
  double t_max = 0.0;
  std::uint64_t seed = 0;

  /// True when the check behaved as intended (passes, or fails as a control).
  bool as_expected() const { return pass != expect_fail; }
};

CheckReport make_report(std::string check, long samples, double max_residual, double tolerance);

namespace tolerance {
inline constexpr double kNullity = 1e-10;
inline constexpr double kMaxwell = 1e-5;
inline constexpr double kS3Norm = 1e-12;
inline constexpr double kConstraint = 1e-10;
inline constexpr double kDerivative = 1e-6;
inline constexpr double kPotentialCurl = 1e-6;
inline constexpr double kCrossFormalism = 1e-8;
inline constexpr double kGsf = 1e-5;
inline constexpr double kSpinorMaxwell = 1e-6;
inline constexpr double kPhiNull = 1e-12;
inline constexpr double kPsiTransport = 1e-5;
inline constexpr double kTranslation = 1e-8;
inline constexpr double kCoreValue = 1e-10;
inline constexpr double kCoreGradient = 1e-5;
inline constexpr double kRotation = 1e-8;
inline constexpr double kClosure = 1e-4;
inline constexpr double kWinding = 1e-2;
inline constexpr double kConfinement = 1e-5;
inline constexpr double kUnitSpeed = 1e-8;
inline constexpr double kHelicityEquality = 1e-2;
inline constexpr double kGridConvergence = 5e-3;
inline constexpr double kRadiusConvergence = 1e-2;
inline constexpr double kGauge = 1e-3;
inline constexpr double kTimeDrift = 3e-2;
inline constexpr double kIntegerLinking = 1e-2;
}  // namespace tolerance

/// Uniform in the ball r <= 5 with every tenth sample in the shell 5 < r <= 20;
/// t uniform in [t_min, t_max]. Deterministic in `seed`.
std::vector<SpacetimePoint> sample_points(std::size_t n, double t_min, double t_max, std::uint64_t seed);

using Points = std::span<const SpacetimePoint>;

/// max(|E.B|, ||E|^2 - |B|^2|) / u.
CheckReport nullity_check(const Construction& c, Points pts);

/// d_t F + i curl F = 0 and div F = 0 by central differences, each scaled by
/// the magnitude of the terms that must cancel.
CheckReport maxwell_check(const Construction& c, Points pts, double h = 1e-4);

/// ||alpha|^2 + |beta|^2 - 1|; `alpha_scale` exists for the negative control.
CheckReport s3_norm_check(Points pts, double alpha_scale = 1.0);

using PairFn = std::function<BatemanEval(const SpacetimePoint&)>;

/// Bateman constraint residual relative to ||grad a x grad b|| + |d_t a||grad b| + |d_t b||grad a|.
CheckReport constraint_check(const PairFn& pair, Points pts, std::string name = "bateman_constraint");

/// Nontriviality residuals relative to |d_t f| (|d_t f|^2 + |grad f|^2).
CheckReport nontriviality_check(const PairFn& pair, Points pts, std::string name = "nontriviality");

/// Closed-form derivatives in `pair` against central differences of its values.
CheckReport derivative_check(const PairFn& pair, Points pts, std::string name = "derivatives");

/// curl C = F with C = alpha^p grad(beta^q).
CheckReport potential_curl_check(const KnotParams& kp, Points pts, double potential_scale = 1.0);

using SpinorConstruction = std::function<SpinorScale(const SpacetimePoint&)>;

/// field_from_phi(phi_from(spinor)) against the Bateman-side field.
CheckReport cross_formalism_check(std::string name, const SpinorConstruction& spinor,
                                  const FieldFn& field, Points pts);

/// Phi from `bateman_to_spinor(pair)` with kappa rescaled by conj(h) against `reference` spinor Phi.
CheckReport conversion_check(std::string name, const PairFn& pair,
                             const std::function<cplx(const BatemanEval&)>& h_factor,
                             const SpinorConstruction& reference, Points pts);

CheckReport gsf_check(std::string name, const SpinorFieldFn& xi, Points pts, double h = 1e-4);
CheckReport spinor_maxwell_check(std::string name, const FieldSpinorFn& phi, Points pts,
                                 double h = 1e-4);
CheckReport phi_null_check(std::string name, const FieldSpinorFn& phi, Points pts);

/// |B . grad Psi_B| / (|B||grad Psi_B|) and the E analogue, at time t.
/// With `swap` the surfaces are exchanged (negative control).
CheckReport psi_transport_check(const KnotParams& kp, Points pts, double t, bool swap = false);

/// Normalised Hopfion Poynting field at t equals the t = 0 field shifted by
/// s t along z; s is fixed from the first sample. `field` defaults to the Hopfion.
CheckReport hopfion_translation_check(Points pts, double t, const FieldFn& field = hopfion_field);

/// Psi_B = +-max on K^+- and grad Psi_B = 0 there (n samples per component).
CheckReport core_value_check(const KnotParams& kp, int n = 64);
CheckReport core_gradient_check(const KnotParams& kp, int n = 64, double offset = 0.0);

/// B cores rotated about z by `angle` lie on Psi_E = +-max (angle = pi/(2q) expected).
CheckReport eb_rotation_check(const KnotParams& kp, double angle, int n = 64);

/// |S|/u = 1 for null fields.
CheckReport unit_speed_check(const Construction& c, Points pts);

struct VerifyOptions {
  std::vector<KnotParams> kp_list;
  std::vector<double> times{0.0, 0.7, 1.3};
  std::size_t samples = 1000;
  std::uint64_t seed = 20130703;
  bool include_tracing = true;
  bool include_quadrature = true;
  QuadratureSpec quadrature{};
  std::string inject_fault;  // "", "nullity", "maxwell", "s3", "transport"
};

VerifyOptions default_verify_options();

/// Runs the whole battery. Empty kp_list runs nothing and passes.
std::vector<CheckReport> run_all(const VerifyOptions& opts);

/// True when every report behaved as expected.
bool aggregate_pass(std::span<const CheckReport> reports);

}  // namespace knotlight
