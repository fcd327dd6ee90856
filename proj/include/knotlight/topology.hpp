#pragma once

#include "knotlight/spacetime.hpp"

#include <functional>
#include <string>
#include <vector>

namespace knotlight {

/// Closed polygon; the last point connects back to the first.
class ClosedCurve {
 public:
  /// Drops consecutive duplicates and a trailing copy of the first point.
  /// Throws InvalidArgument for fewer than 3 distinct points or if the
  /// closure gap exceeds 1e-3 of the diameter (when `check_gap` is set).
  explicit ClosedCurve(std::vector<Vec3> points, bool check_gap = false);

  const std::vector<Vec3>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  /// Diagonal of the axis-aligned bounding box (a cheap upper bound on the diameter).
  double diameter() const;

 private:
  std::vector<Vec3> points_;
};

struct LinkingResult {
  double value = 0.0;
  long nearest = 0;
  int segments = 0;     // segments per curve at the final refinement
  int refinements = 0;
};

/// Gauss linking integral by the segment midpoint double sum. The polygons
/// are evaluated on successively finer subsamples (stride halving) until two
/// consecutive estimates agree to `tol`. Throws CurvesTooClose if the curves
/// come within 1e-3 of the larger diameter, NoConvergence if the full
/// resolution is reached without agreement.
LinkingResult gauss_linking_detail(const ClosedCurve& c1, const ClosedCurve& c2, double tol = 1e-2);
double gauss_linking(const ClosedCurve& c1, const ClosedCurve& c2, double tol = 1e-2);

/// Single evaluation of the double sum over the given polygons.
double gauss_linking_sum(const std::vector<Vec3>& c1, const std::vector<Vec3>& c2);

/// Parametric curves on [0, 2 pi): sampling doubles from `n0` up to `n_max`.
using CurveFn = std::function<Vec3(double)>;
LinkingResult gauss_linking(const CurveFn& c1, const CurveFn& c2, int n0 = 256, int n_max = 1 << 14,
                            double tol = 1e-2);

enum class LinkKind { TorusKnot, Ring };

struct KnotDescriptor {
  LinkKind kind = LinkKind::Ring;
  int p = 0;            // reduced toroidal count, |w_beta| / gcd
  int q = 0;            // reduced poloidal count, |w_alpha| / gcd
  int components = 0;
  int orientation = 1;  // +1 if windings are (q, -p), -1 if (-q, p)

  std::string describe() const;
};

/// Rounds windings (w_alpha, w_beta) ~ (q, -p), reduces by the gcd and
/// reports the torus type. Throws NonIntegerWinding when a winding is more
/// than 1e-2 from an integer or both are zero.
KnotDescriptor classify_torus_knot(double w_alpha, double w_beta, int component_count);

}  // namespace knotlight
