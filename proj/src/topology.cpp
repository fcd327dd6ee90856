#include "knotlight/topology.hpp"

#include "knotlight/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace knotlight {

ClosedCurve::ClosedCurve(std::vector<Vec3> points, bool check_gap) {
  points_.reserve(points.size());
  for (const Vec3& p : points) {
    if (points_.empty() || (p - points_.back()).norm() > 0.0) points_.push_back(p);
  }
  const double gap = points_.size() > 1 ? (points_.back() - points_.front()).norm() : 0.0;
  if (points_.size() > 1 && gap == 0.0) points_.pop_back();
  if (points_.size() < 3) {
    throw Error(ErrorKind::InvalidArgument, "closed curve needs at least 3 distinct points");
  }
  if (check_gap) {
    double max_seg = 0.0;
    for (std::size_t i = 0; i + 1 < points_.size(); ++i)
      max_seg = std::max(max_seg, (points_[i + 1] - points_[i]).norm());
    // a polyline that ends one ordinary segment away from its start is closed
    if (gap > std::max(1e-3 * diameter(), 2.0 * max_seg)) {
      throw Error(ErrorKind::InvalidArgument, "curve is not closed");
    }
  }
}

double ClosedCurve::diameter() const {
  Vec3 lo = points_.front(), hi = points_.front();
  for (const Vec3& p : points_) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

namespace {

/// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double c = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) c += (sum - t) + v; else c += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + c; }
};

std::vector<Vec3> subsample(const std::vector<Vec3>& pts, std::size_t stride) {
  std::vector<Vec3> out;
  out.reserve(pts.size() / stride + 1);
  for (std::size_t i = 0; i < pts.size(); i += stride) out.push_back(pts[i]);
  return out;
}

double min_distance(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  double best = std::numeric_limits<double>::infinity();
  for (const Vec3& p : a)
    for (const Vec3& q : b) best = std::min(best, (p - q).squaredNorm());
  return std::sqrt(best);
}

}  // namespace

double gauss_linking_sum(const std::vector<Vec3>& c1, const std::vector<Vec3>& c2) {
  const std::size_t n1 = c1.size(), n2 = c2.size();
  std::vector<Vec3> d2(n2), m2(n2);
  for (std::size_t j = 0; j < n2; ++j) {
    d2[j] = c2[(j + 1) % n2] - c2[j];
    m2[j] = c2[j] + 0.5 * d2[j];
  }
  CompensatedSum total;
  for (std::size_t i = 0; i < n1; ++i) {
    const Vec3 d1 = c1[(i + 1) % n1] - c1[i];
    const Vec3 m1 = c1[i] + 0.5 * d1;
    double row = 0.0;
    for (std::size_t j = 0; j < n2; ++j) {
      const Vec3 r = m1 - m2[j];
      const double rn = r.norm();
      row += d1.cross(d2[j]).dot(r) / (rn * rn * rn);
    }
    total.add(row);
  }
  return total.value() / (4.0 * std::numbers::pi);
}

LinkingResult gauss_linking_detail(const ClosedCurve& c1, const ClosedCurve& c2, double tol) {
  const double diam = std::max(c1.diameter(), c2.diameter());
  if (min_distance(c1.points(), c2.points()) <= 1e-3 * diam) {
    throw Error(ErrorKind::CurvesTooClose, "curves are not disjoint at the working resolution");
  }
  // coarsest level keeps at least 32 segments; polygons too small to
  // subsample are evaluated once at full resolution
  constexpr std::size_t kCoarsest = 32;
  std::size_t stride = 1;
  while (std::min(c1.size(), c2.size()) / (2 * stride) >= kCoarsest) stride *= 2;

  LinkingResult res;
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (;; stride /= 2) {
    const auto a = subsample(c1.points(), stride);
    const auto b = subsample(c2.points(), stride);
    res.value = gauss_linking_sum(a, b);
    res.segments = int(std::max(a.size(), b.size()));
    ++res.refinements;
    const bool settled = std::isfinite(prev) && std::abs(res.value - prev) < tol;
    if (settled || (stride == 1 && res.refinements == 1)) break;
    if (stride == 1) {
      throw Error(ErrorKind::NoConvergence, "linking estimate did not settle at full resolution");
    }
    prev = res.value;
  }
  res.nearest = std::lround(res.value);
  return res;
}

double gauss_linking(const ClosedCurve& c1, const ClosedCurve& c2, double tol) {
  return gauss_linking_detail(c1, c2, tol).value;
}

LinkingResult gauss_linking(const CurveFn& c1, const CurveFn& c2, int n0, int n_max, double tol) {
  auto sample = [](const CurveFn& c, int n) {
    std::vector<Vec3> out(n);
    for (int i = 0; i < n; ++i) out[i] = c(2.0 * std::numbers::pi * i / n);
    return out;
  };
  LinkingResult res;
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (int n = n0; n <= n_max; n *= 2) {
    const auto a = sample(c1, n);
    const auto b = sample(c2, n);
    const double diam = std::max(ClosedCurve(a).diameter(), ClosedCurve(b).diameter());
    if (min_distance(a, b) <= 1e-3 * diam) {
      throw Error(ErrorKind::CurvesTooClose, "curves are not disjoint");
    }
    res.value = gauss_linking_sum(a, b);
    res.segments = n;
    ++res.refinements;
    if (std::isfinite(prev) && std::abs(res.value - prev) < tol) {
      res.nearest = std::lround(res.value);
      return res;
    }
    prev = res.value;
  }
  throw Error(ErrorKind::NoConvergence, "linking estimate did not settle");
}

std::string KnotDescriptor::describe() const {
  const std::string type = kind == LinkKind::TorusKnot
                               ? "torus-knot(" + std::to_string(p) + "," + std::to_string(q) + ")"
                               : "ring";
  return std::to_string(components) + " x " + type;
}

KnotDescriptor classify_torus_knot(double w_alpha, double w_beta, int component_count) {
  const double ra = std::round(w_alpha);
  const double rb = std::round(w_beta);
  if (std::abs(w_alpha - ra) > 1e-2 || std::abs(w_beta - rb) > 1e-2) {
    throw Error(ErrorKind::NonIntegerWinding, "windings are not integral within 1e-2");
  }
  const int q = std::abs(int(ra));
  const int p = std::abs(int(rb));
  if (p == 0 && q == 0) throw Error(ErrorKind::NonIntegerWinding, "both windings vanish");
  const int g = std::gcd(p, q);

  KnotDescriptor desc;
  desc.p = p / g;
  desc.q = q / g;
  desc.components = component_count;
  desc.orientation = (ra >= 0.0 && rb <= 0.0) ? 1 : -1;
  desc.kind = (desc.p <= 1 || desc.q <= 1) ? LinkKind::Ring : LinkKind::TorusKnot;
  return desc;
}

}  // namespace knotlight
