#include "knotlight/tracer.hpp"

#include "knotlight/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace knotlight {

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::Closed: return "Closed";
    case Termination::MaxLength: return "MaxLength";
    case Termination::Stagnation: return "Stagnation";
    case Termination::MaxSteps: return "MaxSteps";
  }
  return "Unknown";
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

using Rhs = std::function<std::optional<Vec3>(double, const Vec3&)>;

struct StepOutcome {
  Vec3 x;
  Vec3 err;
  Vec3 f_end;
  bool ok = false;  // false if the right-hand side was unavailable at a stage
};

StepOutcome dp45_step(const Rhs& rhs, double s, const Vec3& x, const Vec3& k1, double h) {
  StepOutcome out;
  auto k2 = rhs(s + c2 * h, x + h * a21 * k1);
  if (!k2) return out;
  auto k3 = rhs(s + c3 * h, x + h * (a31 * k1 + a32 * *k2));
  if (!k3) return out;
  auto k4 = rhs(s + c4 * h, x + h * (a41 * k1 + a42 * *k2 + a43 * *k3));
  if (!k4) return out;
  auto k5 = rhs(s + c5 * h, x + h * (a51 * k1 + a52 * *k2 + a53 * *k3 + a54 * *k4));
  if (!k5) return out;
  auto k6 = rhs(s + h, x + h * (a61 * k1 + a62 * *k2 + a63 * *k3 + a64 * *k4 + a65 * *k5));
  if (!k6) return out;
  out.x = x + h * (b1 * k1 + b3 * *k3 + b4 * *k4 + b5 * *k5 + b6 * *k6);
  auto k7 = rhs(s + h, out.x);
  if (!k7) return out;
  out.err = h * (e1 * k1 + e3 * *k3 + e4 * *k4 + e5 * *k5 + e6 * *k6 + e7 * *k7);
  out.f_end = *k7;
  out.ok = true;
  return out;
}

double error_norm(const Vec3& err, const Vec3& x0, const Vec3& x1, double rel, double abs) {
  double e = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double sc = abs + rel * std::max(std::abs(x0[i]), std::abs(x1[i]));
    e = std::max(e, std::abs(err[i]) / sc);
  }
  return e;
}

Vec3 hermite(const Vec3& x0, const Vec3& f0, const Vec3& x1, const Vec3& f1, double h, double tau) {
  const double t2 = tau * tau, t3 = t2 * tau;
  return (2 * t3 - 3 * t2 + 1) * x0 + (t3 - 2 * t2 + tau) * h * f0 + (-2 * t3 + 3 * t2) * x1 +
         (t3 - t2) * h * f1;
}

Vec3 hermite_tangent(const Vec3& x0, const Vec3& f0, const Vec3& x1, const Vec3& f1, double h,
                     double tau) {
  const double t2 = tau * tau;
  return ((6 * t2 - 6 * tau) * x0 + (3 * t2 - 4 * tau + 1) * h * f0 + (-6 * t2 + 6 * tau) * x1 +
          (3 * t2 - 2 * tau) * h * f1) / h;
}

/// Closest approach of the interpolated step to `target`; returns tau in [0, 1].
double closest_tau(const Vec3& x0, const Vec3& f0, const Vec3& x1, const Vec3& f1, double h,
                   const Vec3& target) {
  auto dist = [&](double tau) { return (hermite(x0, f0, x1, f1, h, tau) - target).squaredNorm(); };
  constexpr int n = 32;
  int best = 0;
  double best_d = dist(0.0);
  for (int i = 1; i <= n; ++i) {
    const double d = dist(double(i) / n);
    if (d < best_d) best_d = d, best = i;
  }
  double lo = std::max(0.0, double(best - 1) / n);
  double hi = std::min(1.0, double(best + 1) / n);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 60; ++it) {
    const double m1 = hi - gr * (hi - lo);
    const double m2 = lo + gr * (hi - lo);
    if (dist(m1) < dist(m2)) hi = m2; else lo = m1;
  }
  return 0.5 * (lo + hi);
}

Vec3 select(const Complex3& F, FieldKind kind) {
  switch (kind) {
    case FieldKind::E: return F.real();
    case FieldKind::B: return F.imag();
    case FieldKind::S: return Vec3(F.real()).cross(Vec3(F.imag()));
  }
  return Vec3::Zero();
}

bool finite(const Vec3& v) { return v.allFinite(); }

struct PhaseTracker {
  KnotParams kp;
  double t;
  FieldKind kind;
  cplx alpha, beta;
  double total_alpha = 0.0, total_beta = 0.0;
  bool determinate = true;

  static constexpr double kTiny = 1e-8;

  void reset(const Vec3& x) {
    const BatemanEval be = eval_alpha_beta({t, x});
    alpha = be.alpha;
    beta = be.beta;
    if (std::abs(alpha) < kTiny || std::abs(beta) < kTiny) determinate = false;
  }

  double psi_of(cplx a, cplx b) const {
    const cplx w = ipow(a, kp.p()) * ipow(b, kp.q());
    return kind == FieldKind::E ? w.imag() : w.real();
  }

  struct Probe {
    cplx alpha, beta;
    double d_alpha, d_beta;
  };

  Probe probe(const Vec3& x) const {
    const BatemanEval be = eval_alpha_beta({t, x});
    return {be.alpha, be.beta, std::arg(be.alpha / alpha), std::arg(be.beta / beta)};
  }

  void accept(const Probe& pr) {
    if (std::abs(pr.alpha) < kTiny || std::abs(pr.beta) < kTiny) determinate = false;
    total_alpha += pr.d_alpha;
    total_beta += pr.d_beta;
    alpha = pr.alpha;
    beta = pr.beta;
  }
};

}  // namespace

TraceResult trace(FieldKind field, const KnotParams& kp, const Vec3& seed, double t,
                  const TraceConfig& cfg) {
  auto raw = [&](const Vec3& x) { return select(knotted_field(kp, {t, x}), field); };

  const Vec3 v0 = raw(seed);
  if (!finite(v0)) throw Error(ErrorKind::NonFinite, "field not finite at seed");
  if (v0.norm() < cfg.min_speed) {
    throw Error(ErrorKind::StagnationAtSeed, "field magnitude below min_speed at seed");
  }

  bool nonfinite = false;
  const Rhs rhs = [&](double, const Vec3& x) -> std::optional<Vec3> {
    const Vec3 v = raw(x);
    if (!finite(v)) {
      nonfinite = true;
      return std::nullopt;
    }
    const double n = v.norm();
    if (n < cfg.min_speed) return std::nullopt;
    return Vec3(v / n);
  };

  TraceResult res;
  PhaseTracker phase{kp, t, field, {}, {}};
  phase.reset(seed);
  res.psi_seed = phase.psi_of(phase.alpha, phase.beta);
  res.points.push_back(seed);
  res.arc_length.push_back(0.0);
  res.closure_gap = std::numeric_limits<double>::infinity();

  const Vec3 seed_tangent = v0.normalized();
  Vec3 x = seed;
  Vec3 f = seed_tangent;
  double s = 0.0;
  double h = std::min(1e-2, cfg.max_step);
  double max_excursion = 0.0;
  const double leave_radius = 100.0 * cfg.closure_eps;

  while (true) {
    if (res.steps >= cfg.max_steps) {
      res.termination = Termination::MaxSteps;
      break;
    }
    if (s >= cfg.max_arc_length) {
      res.termination = Termination::MaxLength;
      break;
    }
    h = std::min({h, cfg.max_step, cfg.max_arc_length - s});
    if (h < 1e-14) {
      res.termination = Termination::Stagnation;
      break;
    }

    const StepOutcome st = dp45_step(rhs, s, x, f, h);
    if (nonfinite) throw Error(ErrorKind::NonFinite, "field evaluation overflowed");
    if (!st.ok) {
      h *= 0.5;
      continue;
    }
    const double err = error_norm(st.err, x, st.x, cfg.rel_tol, cfg.abs_tol);
    if (err > 1.0) {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      continue;
    }
    // keep per-step phase increments well inside (-pi, pi)
    const auto pr = phase.probe(st.x);
    if (std::abs(pr.d_alpha) > std::numbers::pi / 2 || std::abs(pr.d_beta) > std::numbers::pi / 2) {
      if (h > 1e-10) {
        h *= 0.5;
        continue;
      }
      phase.determinate = false;
    }

    ++res.steps;
    const double s_new = s + h;
    const double d1 = (st.x - seed).norm();

    // closure: interpolated return to the seed, moving in the seed direction
    if (max_excursion > leave_radius && std::min((x - seed).norm(), d1) < h + cfg.closure_eps) {
      const double tau = closest_tau(x, f, st.x, st.f_end, h, seed);
      const Vec3 xc = hermite(x, f, st.x, st.f_end, h, tau);
      const double gap = (xc - seed).norm();
      res.closure_gap = std::min(res.closure_gap, gap);
      const double s_c = s + tau * h;
      const Vec3 tc = hermite_tangent(x, f, st.x, st.f_end, h, tau).normalized();
      if (gap <= cfg.closure_eps && s_c > 10.0 * cfg.closure_eps && tc.dot(seed_tangent) > 0.99) {
        const auto prc = phase.probe(xc);
        phase.accept(prc);
        res.psi_drift = std::max(res.psi_drift, std::abs(phase.psi_of(prc.alpha, prc.beta) - res.psi_seed));
        res.points.push_back(xc);
        res.arc_length.push_back(s_c);
        res.closed = true;
        res.closure_gap = gap;
        res.termination = Termination::Closed;
        break;
      }
    }

    phase.accept(pr);
    res.psi_drift = std::max(res.psi_drift, std::abs(phase.psi_of(pr.alpha, pr.beta) - res.psi_seed));
    max_excursion = std::max(max_excursion, d1);
    x = st.x;
    f = st.f_end;
    s = s_new;
    res.points.push_back(x);
    res.arc_length.push_back(s);

    const double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    h *= std::clamp(factor, 0.2, 5.0);
  }

  res.windings.alpha = phase.total_alpha / (2.0 * std::numbers::pi);
  res.windings.beta = phase.total_beta / (2.0 * std::numbers::pi);
  res.windings.determinate = phase.determinate;
  return res;
}

double reference_energy_density(const KnotParams& kp) {
  const CorePoint cp = core_curve_point({kp, CoreSign::Plus, 0, FieldKind::B}, 0.0);
  return eval_knotted_field(kp, {0.0, cp.position}).u;
}

Vec3 advect_marker(const Construction& field, const Vec3& seed, double t0, double t1,
                   double reference_energy) {
  if (t1 == t0) return seed;
  const double floor = 1e-12 * reference_energy;
  const double dir = t1 > t0 ? 1.0 : -1.0;
  const Rhs rhs = [&](double t, const Vec3& x) -> std::optional<Vec3> {
    const RSValue v = rs_decompose(field.field({t, x}));
    if (!std::isfinite(v.u) || v.u <= floor || v.u == 0.0) {
      return std::nullopt;
    }
    return Vec3(v.S / v.u);
  };

  auto f0 = rhs(t0, seed);
  if (!f0) throw Error(ErrorKind::Stagnation, "energy density vanishes at marker");
  Vec3 x = seed;
  Vec3 f = *f0;
  double t = t0;
  double h = 1e-2 * dir;
  for (long steps = 0; steps < 1'000'000; ++steps) {
    if ((t1 - t) * dir <= 0.0) return x;
    if (std::abs(h) > std::abs(t1 - t)) h = t1 - t;
    const StepOutcome st = dp45_step(rhs, t, x, f, h);
    if (!st.ok) {
      h *= 0.5;
      if (std::abs(h) < 1e-14) throw Error(ErrorKind::Stagnation, "marker reached a null of u");
      continue;
    }
    const double err = error_norm(st.err, x, st.x, 1e-11, 1e-13);
    if (err > 1.0) {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      continue;
    }
    x = st.x;
    f = st.f_end;
    t += h;
    const double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    h *= std::clamp(factor, 0.2, 5.0);
  }
  throw Error(ErrorKind::NoConvergence, "marker advection exceeded step budget");
}

Vec3 advect_marker(const Vec3& seed, double t0, double t1, const KnotParams& kp) {
  return advect_marker(knotted_construction(kp), seed, t0, t1, reference_energy_density(kp));
}

}  // namespace knotlight
