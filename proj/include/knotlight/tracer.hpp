#pragma once

#include "knotlight/bateman.hpp"
#include "knotlight/geometry.hpp"
#include "knotlight/spacetime.hpp"

#include <string_view>
#include <vector>

namespace knotlight {

struct TraceConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double max_arc_length = 500.0;
  double closure_eps = 1e-4;
  double min_speed = 1e-9;
  long max_steps = 1'000'000;
  double max_step = 0.25;  // arc-length cap per step
};

enum class Termination { Closed, MaxLength, Stagnation, MaxSteps };

std::string_view to_string(Termination t);

struct Windings {
  double alpha = 0.0;  // unwrapped advance of arg(alpha) / 2 pi
  double beta = 0.0;   // unwrapped advance of arg(beta) / 2 pi
  bool determinate = true;
};

struct TraceResult {
  std::vector<Vec3> points;
  std::vector<double> arc_length;
  bool closed = false;
  /// Closest return to the seed after leaving it (infinity if it never came back).
  double closure_gap = 0.0;
  /// max |Psi - Psi(seed)| along the line; Psi_B for B and S lines, Psi_E for E lines.
  double psi_drift = 0.0;
  double psi_seed = 0.0;
  Windings windings;
  Termination termination = Termination::MaxLength;
  long steps = 0;
};

/// Integrates dx/ds = V(x, t)/|V(x, t)| at fixed t for V in {E, B, E x B}
/// of the (p, q) field. Throws StagnationAtSeed or NonFinite.
TraceResult trace(FieldKind field, const KnotParams& kp, const Vec3& seed, double t,
                  const TraceConfig& cfg = {});

/// Integrates dx/dt = S/u (the energy transport velocity) from t0 to t1.
/// Throws Stagnation where u falls below 1e-12 of `reference_energy_density`.
Vec3 advect_marker(const Construction& field, const Vec3& seed, double t0, double t1,
                   double reference_energy = 0.0);
Vec3 advect_marker(const Vec3& seed, double t0, double t1, const KnotParams& kp);

/// Energy density at the first K^+ core point at t = 0; a field-wide scale.
double reference_energy_density(const KnotParams& kp);

}  // namespace knotlight
