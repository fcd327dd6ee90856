#pragma once

#include "knotlight/bateman.hpp"
#include "knotlight/spacetime.hpp"

#include <Eigen/Core>
#include <functional>
#include <string>
#include <vector>

namespace knotlight {

/// Spherical product rule on the ball r <= R: Gauss-Legendre in r and in
/// cos(theta), uniform trapezoid in phi.
struct QuadratureSpec {
  double R = 24.0;
  int n_r = 96;
  int n_theta = 64;
  int n_phi = 64;

  void validate() const;
};

struct ConservedSet {
  double energy = 0.0;  // (1/2) int |E|^2 + |B|^2
  Vec3 P = Vec3::Zero();  // int E x B
  Vec3 L = Vec3::Zero();  // int x x (E x B)
  double H_m = 0.0;     // int A . B, A = Im(alpha^p grad beta^q)
  double H_e = 0.0;     // int C . E, C = Re(alpha^p grad beta^q)

  struct Normalized {
    Vec3 P = Vec3::Zero();
    Vec3 L = Vec3::Zero();
    double H_m = 0.0;
    double H_e = 0.0;
  } normalized;

  /// Largest relative change of (energy, |P|, |L|, H_m, H_e) between R and R/2.
  double truncation_estimate = 0.0;
};

/// Normalisation conventions used by `conserved_set`, for report metadata.
inline constexpr const char* kHelicityConvention =
    "H_m = int A.B with A = Im(alpha^p grad beta^q); H_e = int C.E with C = Re(alpha^p grad beta^q); "
    "unit prefactor; energy = (1/2) int (|E|^2 + |B|^2); ratios are divided by energy";

using BallIntegrand = std::function<void(const Vec3&, Eigen::Ref<Eigen::VectorXd>)>;

/// Integrates `n_out` quantities over the ball with compensated summation in
/// a fixed loop order.
Eigen::VectorXd integrate_ball(const QuadratureSpec& qs, int n_out, const BallIntegrand& f);

ConservedSet conserved_set(const KnotParams& kp, double t, const QuadratureSpec& qs = {});

struct TimeInvarianceReport {
  std::vector<double> times;
  std::vector<ConservedSet> sets;
  double energy_drift = 0.0;      // max |E(t)/E(t0) - 1|
  double helicity_drift = 0.0;    // max relative pairwise change of H_m/E, H_e/E
  double momentum_drift = 0.0;    // same for P_z/E
  double angular_drift = 0.0;     // same for L_z/E
  double tolerance = 0.03;
  bool pass = false;
};

TimeInvarianceReport time_invariance_check(const KnotParams& kp, const QuadratureSpec& qs,
                                           const std::vector<double>& times);

}  // namespace knotlight
