#include "knotlight/verification.hpp"

#include "knotlight/errors.hpp"
#include "knotlight/finite_difference.hpp"
#include "knotlight/geometry.hpp"
#include "knotlight/topology.hpp"
#include "knotlight/tracer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace knotlight {

namespace {

constexpr double kFloor = 1e-30;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string kp_label(const KnotParams& kp) {
  return std::to_string(kp.p()) + "," + std::to_string(kp.q());
}

void stamp_times(CheckReport& r, Points pts) {
  if (pts.empty()) return;
  auto [lo, hi] = std::minmax_element(pts.begin(), pts.end(),
                                      [](const auto& a, const auto& b) { return a.t < b.t; });
  r.t_min = lo->t;
  r.t_max = hi->t;
}

/// NaN residuals count as failures.
double worst(double acc, double v) { return std::isnan(v) ? kInf : std::max(acc, v); }

Complex3 curl(const std::array<Complex3, 4>& g) {
  return {g[2].z() - g[3].y(), g[3].x() - g[1].z(), g[1].y() - g[2].x()};
}

double curl_term_scale(const std::array<Complex3, 4>& g) {
  return std::abs(g[2].z()) + std::abs(g[3].y()) + std::abs(g[3].x()) + std::abs(g[1].z()) +
         std::abs(g[1].y()) + std::abs(g[2].x());
}

}  // namespace

CheckReport make_report(std::string check, long samples, double max_residual, double tolerance) {
  CheckReport r;
  r.check = std::move(check);
  r.samples = samples;
  r.max_residual = max_residual;
  r.tolerance = tolerance;
  r.pass = max_residual <= tolerance;
  return r;
}

std::vector<SpacetimePoint> sample_points(std::size_t n, double t_min, double t_max, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<SpacetimePoint> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double r;
    if (i % 10 == 9) {
      const double lo = 125.0, hi = 8000.0;  // 5^3, 20^3
      r = std::cbrt(lo + (hi - lo) * unit(rng));
    } else {
      r = 5.0 * std::cbrt(unit(rng));
    }
    const double ct = 2.0 * unit(rng) - 1.0;
    const double st = std::sqrt(1.0 - ct * ct);
    const double phi = 2.0 * std::numbers::pi * unit(rng);
    const double t = t_min + (t_max - t_min) * unit(rng);
    pts.emplace_back(t, r * st * std::cos(phi), r * st * std::sin(phi), r * ct);
  }
  return pts;
}

CheckReport nullity_check(const Construction& c, Points pts) {
  double res = 0.0;
  for (const auto& pt : pts) {
    const RSValue v = rs_decompose(c.field(pt));
    const double r = std::max(std::abs(v.E.dot(v.B)), std::abs(v.E.squaredNorm() - v.B.squaredNorm()));
    res = worst(res, r / (v.u + kFloor));
  }
  auto rep = make_report("nullity/" + c.name, long(pts.size()), res, tolerance::kNullity);
  stamp_times(rep, pts);
  return rep;
}

CheckReport maxwell_check(const Construction& c, Points pts, double h) {
  double res = 0.0;
  for (const auto& pt : pts) {
    const auto g = spacetime_gradient(c.field, pt, h);
    const Complex3 rot = curl(g);
    const double evo = (g[0] + I * rot).norm() / (g[0].norm() + rot.norm() + kFloor);
    const cplx div = g[1].x() + g[2].y() + g[3].z();
    const double div_scale = std::abs(g[1].x()) + std::abs(g[2].y()) + std::abs(g[3].z());
    res = worst(res, std::max(evo, std::abs(div) / (div_scale + kFloor)));
  }
  auto rep = make_report("maxwell/" + c.name, long(pts.size()), res, tolerance::kMaxwell);
  stamp_times(rep, pts);
  return rep;
}

CheckReport s3_norm_check(Points pts, double alpha_scale) {
  double res = 0.0;
  for (const auto& pt : pts) {
    const BatemanEval be = eval_alpha_beta(pt);
    res = worst(res, std::abs(std::norm(alpha_scale * be.alpha) + std::norm(be.beta) - 1.0));
  }
  auto rep = make_report("s3_norm", long(pts.size()), res, tolerance::kS3Norm);
  stamp_times(rep, pts);
  return rep;
}

CheckReport constraint_check(const PairFn& pair, Points pts, std::string name) {
  double res = 0.0;
  for (const auto& pt : pts) {
    const BatemanEval be = pair(pt);
    const double scale = cross(be.grad_alpha, be.grad_beta).norm() +
                         std::abs(be.dt_alpha) * be.grad_beta.norm() +
                         std::abs(be.dt_beta) * be.grad_alpha.norm();
    res = worst(res, bateman_constraint_residual(be) / (scale + kFloor));
  }
  auto rep = make_report(std::move(name), long(pts.size()), res, tolerance::kConstraint);
  stamp_times(rep, pts);
  return rep;
}

CheckReport nontriviality_check(const PairFn& pair, Points pts, std::string name) {
  double res = 0.0;
  for (const auto& pt : pts) {
    const BatemanEval be = pair(pt);
    const auto r = nontriviality_residual(be);
    auto scale = [](cplx dt, const Complex3& g) {
      return std::abs(dt) * (std::norm(dt) + g.squaredNorm()) + kFloor;
    };
    res = worst(res, std::max(r.alpha / scale(be.dt_alpha, be.grad_alpha),
                              r.beta / scale(be.dt_beta, be.grad_beta)));
  }
  auto rep = make_report(std::move(name), long(pts.size()), res, tolerance::kConstraint);
  stamp_times(rep, pts);
  return rep;
}

CheckReport derivative_check(const PairFn& pair, Points pts, std::string name) {
  double res = 0.0;
  for (const auto& pt : pts) {
    const BatemanEval be = pair(pt);
    Eigen::Vector4cd ana_a, ana_b, fd_a, fd_b;
    ana_a << be.dt_alpha, be.grad_alpha;
    ana_b << be.dt_beta, be.grad_beta;
    for (int mu = 0; mu < 4; ++mu) {
      fd_a[mu] = central_difference([&](const SpacetimePoint& p) { return pair(p).alpha; }, pt, mu);
      fd_b[mu] = central_difference([&](const SpacetimePoint& p) { return pair(p).beta; }, pt, mu);
    }
    res = worst(res, (fd_a - ana_a).norm() / (ana_a.norm() + kFloor));
    res = worst(res, (fd_b - ana_b).norm() / (ana_b.norm() + kFloor));
  }
  auto rep = make_report(std::move(name), long(pts.size()), res, tolerance::kDerivative);
  stamp_times(rep, pts);
  return rep;
}

CheckReport potential_curl_check(const KnotParams& kp, Points pts, double potential_scale) {
  double res = 0.0;
  auto potential = [&](const SpacetimePoint& p) -> Complex3 {
    return potential_scale * eval_potential(kp, p);
  };
  for (const auto& pt : pts) {
    const auto g = spacetime_gradient(potential, pt);
    const Complex3 F = knotted_field(kp, pt);
    res = worst(res, (curl(g) - F).norm() / (F.norm() + curl_term_scale(g) + kFloor));
  }
  auto rep = make_report("potential_curl", long(pts.size()), res, tolerance::kPotentialCurl);
  rep.kp = kp_label(kp);
  stamp_times(rep, pts);
  return rep;
}

CheckReport cross_formalism_check(std::string name, const SpinorConstruction& spinor,
                                  const FieldFn& field, Points pts) {
  double res = 0.0;
  for (const auto& pt : pts) {
    const Complex3 Fs = field_from_phi(phi_from(spinor(pt))).F;
    const Complex3 Fb = field(pt);
    res = worst(res, (Fs - Fb).norm() / (Fb.norm() + kFloor));
  }
  auto rep = make_report("cross_formalism/" + name, long(pts.size()), res, tolerance::kCrossFormalism);
  stamp_times(rep, pts);
  return rep;
}

CheckReport conversion_check(std::string name, const PairFn& pair,
                             const std::function<cplx(const BatemanEval&)>& h_factor,
                             const SpinorConstruction& reference, Points pts) {
  double res = 0.0;
  for (const auto& pt : pts) {
    const BatemanEval be = pair(pt);
    const BatemanSpinor bs = bateman_to_spinor(be);
    const FieldSpinor converted = phi_from(bs.spinor.xi, bs.spinor.kappa * std::conj(h_factor(be)));
    const FieldSpinor ref = phi_from(reference(pt));
    const double scale = ref.matrix().cwiseAbs().maxCoeff();
    res = worst(res, (converted.matrix() - ref.matrix()).cwiseAbs().maxCoeff() / (scale + kFloor));
  }
  auto rep = make_report("conversion/" + name, long(pts.size()), res, tolerance::kCrossFormalism);
  stamp_times(rep, pts);
  return rep;
}

CheckReport gsf_check(std::string name, const SpinorFieldFn& xi, Points pts, double h) {
  double res = 0.0;
  for (const auto& pt : pts) {
    const Spinor2 r = gsf_residual(xi, pt, h);
    const auto d = spacetime_gradient([&](const SpacetimePoint& p) -> Spinor2 { return xi(p); }, pt, h);
    double dscale = 0.0;
    for (const auto& v : d) dscale += v.norm();
    res = worst(res, r.norm() / (xi(pt).squaredNorm() * dscale + kFloor));
  }
  auto rep = make_report("gsf/" + name, long(pts.size()), res, tolerance::kGsf);
  stamp_times(rep, pts);
  return rep;
}

CheckReport spinor_maxwell_check(std::string name, const FieldSpinorFn& phi, Points pts, double h) {
  double res = 0.0;
  for (const auto& pt : pts) {
    const Matrix2c r = spinor_maxwell_residual(phi, pt, h);
    const auto d = spacetime_gradient(
        [&](const SpacetimePoint& p) -> Matrix2c { return phi(p).matrix(); }, pt, h);
    double dscale = 0.0;
    for (const auto& v : d) dscale += v.cwiseAbs().maxCoeff();
    res = worst(res, r.cwiseAbs().maxCoeff() / (dscale + kFloor));
  }
  auto rep = make_report("spinor_maxwell/" + name, long(pts.size()), res, tolerance::kSpinorMaxwell);
  stamp_times(rep, pts);
  return rep;
}

CheckReport phi_null_check(std::string name, const FieldSpinorFn& phi, Points pts) {
  double res = 0.0;
  for (const auto& pt : pts) {
    const FieldSpinor f = phi(pt);
    const double scale = f.matrix().cwiseAbs2().maxCoeff();
    res = worst(res, std::abs(phi_contraction(f)) / (scale + kFloor));
  }
  auto rep = make_report("phi_null/" + name, long(pts.size()), res, tolerance::kPhiNull);
  stamp_times(rep, pts);
  return rep;
}

CheckReport psi_transport_check(const KnotParams& kp, Points pts, double t, bool swap) {
  double res = 0.0;
  for (const auto& p0 : pts) {
    const SpacetimePoint pt{t, p0.x, p0.y, p0.z};
    const RSValue v = eval_knotted_field(kp, pt);
    auto grad = [&](FieldKind which) {
      Vec3 g;
      for (int k = 1; k <= 3; ++k)
        g[k - 1] = central_difference([&](const SpacetimePoint& p) { return psi(kp, p, which); }, pt, k);
      return g;
    };
    const Vec3 gb = grad(swap ? FieldKind::E : FieldKind::B);
    const Vec3 ge = grad(swap ? FieldKind::B : FieldKind::E);
    const double rb = std::abs(v.B.dot(gb)) / (v.B.norm() * gb.norm() + kFloor);
    const double re = std::abs(v.E.dot(ge)) / (v.E.norm() * ge.norm() + kFloor);
    res = worst(res, std::max(rb, re));
  }
  auto rep = make_report(swap ? "psi_transport/swapped" : "psi_transport", long(pts.size()), res,
                         tolerance::kPsiTransport);
  rep.kp = kp_label(kp);
  rep.t_min = rep.t_max = t;
  return rep;
}

CheckReport hopfion_translation_check(Points pts, double t, const FieldFn& field) {
  auto direction = [&](const SpacetimePoint& p) -> Vec3 {
    const RSValue v = rs_decompose(field(p));
    return v.S / (v.S.norm() + kFloor);
  };
  double sign = 0.0;
  double res = 0.0;
  for (const auto& p0 : pts) {
    const Vec3 now = direction({t, p0.x, p0.y, p0.z});
    if (sign == 0.0) {
      const double up = (now - direction({0.0, p0.x, p0.y, p0.z - t})).norm();
      const double down = (now - direction({0.0, p0.x, p0.y, p0.z + t})).norm();
      sign = up <= down ? 1.0 : -1.0;
    }
    res = worst(res, (now - direction({0.0, p0.x, p0.y, p0.z - sign * t})).norm());
  }
  auto rep = make_report("hopfion_translation", long(pts.size()), res, tolerance::kTranslation);
  rep.t_min = rep.t_max = t;
  return rep;
}

namespace {

template <class Fn>
double over_cores(const KnotParams& kp, int n, FieldKind field, Fn&& fn) {
  double res = 0.0;
  for (CoreSign sign : {CoreSign::Plus, CoreSign::Minus}) {
    for (int k = 0; k < kp.gcd(); ++k) {
      for (int i = 0; i < n; ++i) {
        const double theta = 2.0 * std::numbers::pi * (i + 0.5) / n;
        const CorePoint cp = core_curve_point({kp, sign, k, field}, theta);
        res = worst(res, fn(cp.position, sign == CoreSign::Plus ? 1.0 : -1.0));
      }
    }
  }
  return res;
}

}  // namespace

CheckReport core_value_check(const KnotParams& kp, int n) {
  const double m = psi_extremes(kp);
  double res = 0.0;
  for (FieldKind field : {FieldKind::B, FieldKind::E}) {
    res = std::max(res, over_cores(kp, n, field, [&](const Vec3& x, double s) {
      return std::abs(psi(kp, {0.0, x}, field) - s * m) / m;
    }));
  }
  auto rep = make_report("core_value", long(4 * n * kp.gcd()), res, tolerance::kCoreValue);
  rep.kp = kp_label(kp);
  return rep;
}

CheckReport core_gradient_check(const KnotParams& kp, int n, double offset) {
  double res = over_cores(kp, n, FieldKind::B, [&](const Vec3& x0, double) {
    const SpacetimePoint pt{0.0, x0 + offset * Vec3(0.3, -0.5, 0.8)};
    const BatemanEval be = eval_alpha_beta(pt);
    const double w = std::abs(ipow(be.alpha, kp.p()) * ipow(be.beta, kp.q()));
    const double scale = w * (kp.p() * be.grad_alpha.norm() / std::abs(be.alpha) +
                              kp.q() * be.grad_beta.norm() / std::abs(be.beta));
    Vec3 g;
    for (int k = 1; k <= 3; ++k)
      g[k - 1] = central_difference([&](const SpacetimePoint& p) { return psi(kp, p, FieldKind::B); }, pt, k);
    return g.norm() / (scale + kFloor);
  });
  auto rep = make_report(offset == 0.0 ? "core_gradient" : "core_gradient/offset", long(2 * n * kp.gcd()),
                         res, tolerance::kCoreGradient);
  rep.kp = kp_label(kp);
  return rep;
}

CheckReport eb_rotation_check(const KnotParams& kp, double angle, int n) {
  const double m = psi_extremes(kp);
  const double res = over_cores(kp, n, FieldKind::B, [&](const Vec3& x, double) {
    return std::abs(std::abs(psi(kp, {0.0, rotate_z(x, angle)}, FieldKind::E)) - m) / m;
  });
  auto rep = make_report("eb_rotation", long(2 * n * kp.gcd()), res, tolerance::kRotation);
  rep.kp = kp_label(kp);
  return rep;
}

CheckReport unit_speed_check(const Construction& c, Points pts) {
  double res = 0.0;
  for (const auto& pt : pts) {
    const RSValue v = rs_decompose(c.field(pt));
    res = worst(res, std::abs(v.S.norm() / (v.u + kFloor) - 1.0));
  }
  auto rep = make_report("unit_speed/" + c.name, long(pts.size()), res, tolerance::kUnitSpeed);
  stamp_times(rep, pts);
  return rep;
}

VerifyOptions default_verify_options() {
  VerifyOptions o;
  o.kp_list = {KnotParams(1, 1), KnotParams(2, 3), KnotParams(2, 5), KnotParams(1, 2), KnotParams(2, 2)};
  return o;
}

namespace {

Construction faulty(Construction c) {
  FieldFn inner = c.field;
  c.field = [inner](const SpacetimePoint& p) -> Complex3 {
    const Complex3 F = inner(p);
    return 1.01 * F.real().cast<cplx>() + I * F.imag().cast<cplx>();
  };
  return c;
}

Construction scaled_by_x(Construction c) {
  FieldFn inner = c.field;
  c.name += "*x";
  c.field = [inner](const SpacetimePoint& p) -> Complex3 { return p.x * inner(p); };
  return c;
}

CheckReport control(CheckReport r) {
  r.expect_fail = true;
  r.check += "/control";
  return r;
}

CheckReport with_kp(CheckReport r, const KnotParams& kp) {
  r.kp = kp_label(kp);
  return r;
}

cplx knotted_h(const KnotParams& kp, const BatemanEval& be) {
  return double(kp.p() * kp.q()) * ipow(be.alpha, kp.p() - 1) * ipow(be.beta, kp.q() - 1);
}

// Generic seeds for torus-confinement traces: |Psi_B| >= 0.1 max, |B| not tiny.
std::vector<Vec3> generic_seeds(const KnotParams& kp, double t, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-1.5, 1.5);
  const double m = psi_extremes(kp);
  std::vector<Vec3> out;
  while (out.size() < n) {
    const Vec3 x{box(rng), box(rng), box(rng)};
    if (x.norm() > 1.5) continue;
    if (std::abs(psi(kp, {t, x}, FieldKind::B)) < 0.1 * m) continue;
    if (eval_knotted_field(kp, {t, x}).B.norm() < 1e-3) continue;
    out.push_back(x);
  }
  return out;
}

double winding_mismatch(const Windings& w, int q, int p) {
  const double fwd = std::max(std::abs(w.alpha - q), std::abs(w.beta + p));
  const double rev = std::max(std::abs(w.alpha + q), std::abs(w.beta - p));
  return w.determinate ? std::min(fwd, rev) : kInf;
}

void tracing_checks(const KnotParams& kp, const VerifyOptions& opts, std::vector<CheckReport>& out) {
  const int g = kp.gcd();
  const int pr = kp.p() / g, qr = kp.q() / g;
  const double m = psi_extremes(kp);
  TraceConfig cfg;

  // core line at t = 0 and its advected image at t = 1
  const Vec3 seed0 = core_curve_point({kp, CoreSign::Plus, 0, FieldKind::B}, 0.0).position;
  for (double t : {0.0, 1.0}) {
    const Vec3 seed = t == 0.0 ? seed0 : advect_marker(seed0, 0.0, t, kp);
    const TraceResult tr = trace(FieldKind::B, kp, seed, t, cfg);
    auto closure = make_report("core_closure", 1, tr.closed ? tr.closure_gap : kInf, tolerance::kClosure);
    auto wind = make_report("core_windings", 1, winding_mismatch(tr.windings, qr, pr), tolerance::kWinding);
    for (auto* r : {&closure, &wind}) {
      r->kp = kp_label(kp);
      r->t_min = r->t_max = t;
      out.push_back(*r);
    }
  }

  // generic lines stay on their torus
  for (double t : {0.0, 1.3}) {
    double drift = 0.0, cross_drift = 0.0;
    TraceConfig c = cfg;
    c.max_arc_length = 100.0;
    for (const Vec3& s : generic_seeds(kp, t, 4, opts.seed + 7)) {
      const TraceResult tr = trace(FieldKind::B, kp, s, t, c);
      drift = worst(drift, tr.psi_drift / m);
      const double e0 = psi(kp, {t, s}, FieldKind::E);
      for (const Vec3& x : tr.points) cross_drift = std::max(cross_drift, std::abs(psi(kp, {t, x}, FieldKind::E) - e0) / m);
    }
    auto r = make_report("torus_confinement", 4, drift, tolerance::kConfinement);
    auto ctl = control(make_report("torus_confinement/psi_e", 4, cross_drift, tolerance::kConfinement));
    for (auto* rr : {&r, &ctl}) {
      rr->kp = kp_label(kp);
      rr->t_min = rr->t_max = t;
      out.push_back(*rr);
    }
  }

  // K+ and K- (component 0) link an integral number of times
  auto kplus = [&](double th) { return core_curve_point({kp, CoreSign::Plus, 0, FieldKind::B}, th).position; };
  auto kminus = [&](double th) { return core_curve_point({kp, CoreSign::Minus, 0, FieldKind::B}, th).position; };
  const LinkingResult lk = gauss_linking(CurveFn(kplus), CurveFn(kminus));
  out.push_back(with_kp(make_report("core_linking_integral", lk.segments,
                                    std::abs(lk.value - double(lk.nearest)), tolerance::kIntegerLinking), kp));

  if (kp == KnotParams(1, 1)) {
    const auto seeds = sample_points(20, 0.0, 0.0, opts.seed + 11);
    double gap = 0.0;
    for (const auto& s : seeds) {
      const Vec3 x = s.position() * (1.5 / 5.0);
      const TraceResult tr = trace(FieldKind::B, kp, x, 0.0, cfg);
      gap = worst(gap, tr.closed ? tr.closure_gap : kInf);
    }
    out.push_back(with_kp(make_report("hopfion_closure", long(seeds.size()), gap, tolerance::kClosure), kp));
  }
}

void quadrature_checks(const KnotParams& kp, const VerifyOptions& opts, std::vector<CheckReport>& out) {
  const QuadratureSpec qs = opts.quadrature;
  const ConservedSet base = conserved_set(kp, 0.0, qs);

  auto push = [&](CheckReport r) {
    r.kp = kp_label(kp);
    out.push_back(std::move(r));
  };
  push(make_report("helicity_equality", 1, std::abs(base.H_m - base.H_e) / base.energy,
                   tolerance::kHelicityEquality));
  push(make_report("transverse_charges", 1,
                   std::max({std::abs(base.normalized.P.x()), std::abs(base.normalized.P.y()),
                             std::abs(base.normalized.L.x()), std::abs(base.normalized.L.y())}),
                   1e-3));

  auto compare = [&](const ConservedSet& a, const ConservedSet& b) {
    auto rel = [](double x, double y) { return std::abs(x - y) / std::max(std::abs(x), 1e-300); };
    return std::max({rel(a.energy, b.energy), rel(a.normalized.H_m, b.normalized.H_m),
                     rel(a.normalized.H_e, b.normalized.H_e), rel(a.normalized.P.z(), b.normalized.P.z()),
                     rel(a.normalized.L.z(), b.normalized.L.z())});
  };

  QuadratureSpec fine = qs;
  fine.n_r *= 2;
  fine.n_theta *= 2;
  fine.n_phi *= 2;
  push(make_report("grid_convergence", 1, compare(base, conserved_set(kp, 0.0, fine)),
                   tolerance::kGridConvergence));

  QuadratureSpec wide = qs;
  wide.R *= 2.0;
  wide.n_r *= 2;
  push(make_report("radius_convergence", 1, compare(base, conserved_set(kp, 0.0, wide)),
                   tolerance::kRadiusConvergence));

  // A -> A + grad(chi), chi = x y exp(-r^2)
  const Eigen::VectorXd gauge = integrate_ball(qs, 1, [&](const Vec3& x, Eigen::Ref<Eigen::VectorXd> o) {
    const double e = std::exp(-x.squaredNorm());
    const Vec3 grad_chi{x.y() * e * (1.0 - 2.0 * x.x() * x.x()), x.x() * e * (1.0 - 2.0 * x.y() * x.y()),
                        -2.0 * x.x() * x.y() * x.z() * e};
    o[0] = grad_chi.dot(eval_knotted_field(kp, {0.0, x}).B);
  });
  push(make_report("helicity_gauge", 1, std::abs(gauge[0]) / std::abs(base.H_m), tolerance::kGauge));

  const ConservedSet later = conserved_set(kp, 1.0, qs);
  auto drift = make_report("time_invariance", 2, compare(base, later), tolerance::kTimeDrift);
  drift.t_max = 1.0;
  push(drift);
}

}  // namespace

std::vector<CheckReport> run_all(const VerifyOptions& opts) {
  std::vector<CheckReport> out;
  if (opts.kp_list.empty()) return out;

  const double t_lo = opts.times.empty() ? 0.0 : *std::min_element(opts.times.begin(), opts.times.end());
  const double t_hi = opts.times.empty() ? 0.0 : *std::max_element(opts.times.begin(), opts.times.end());
  const auto pts = sample_points(opts.samples, t_lo, t_hi, opts.seed);
  const auto few = std::span(pts).first(std::min<std::size_t>(100, pts.size()));
  const auto wide = sample_points(10 * opts.samples, -10.0, 10.0, opts.seed + 1);
  const bool fault_nullity = opts.inject_fault == "nullity";
  const bool fault_maxwell = opts.inject_fault == "maxwell";

  // constructions independent of (p, q)
  std::vector<Construction> refs{plane_wave_construction(), hopfion_construction()};
  for (const Construction& c : refs) {
    out.push_back(nullity_check(fault_nullity ? faulty(c) : c, pts));
    out.push_back(maxwell_check(fault_maxwell ? scaled_by_x(c) : c, pts));
    out.push_back(unit_speed_check(c, pts));
  }
  out.push_back(control(nullity_check({"constant_non_null", [](const SpacetimePoint&) {
                                         return Complex3{cplx{1.0, 1.0}, 0.0, 0.0};
                                       }}, few)));
  out.push_back(control(maxwell_check(scaled_by_x(hopfion_construction()), few)));
  out.push_back(control(unit_speed_check(faulty(hopfion_construction()), few)));

  out.push_back(s3_norm_check(wide, opts.inject_fault == "s3" ? 1.01 : 1.0));
  out.push_back(control(s3_norm_check(few, 1.01)));

  const PairFn knotted_pair = eval_alpha_beta;
  const PairFn perturbed = [](const SpacetimePoint& p) {
    BatemanEval be = eval_alpha_beta(p);
    be.beta += 0.1 * p.x;
    be.grad_beta.x() += 0.1;
    return be;
  };
  const PairFn violating = [](const SpacetimePoint& p) {
    BatemanEval be;
    be.alpha = p.t + 2.0 * p.x;
    be.beta = cplx{p.y, p.z};
    be.dt_alpha = 1.0;
    be.grad_alpha = Complex3{2.0, 0.0, 0.0};
    be.grad_beta = Complex3{0.0, 1.0, I};
    return be;
  };
  out.push_back(constraint_check(knotted_pair, pts));
  out.push_back(constraint_check(plane_wave_pair, pts, "bateman_constraint/plane_wave"));
  out.push_back(control(constraint_check(perturbed, few)));
  out.push_back(nontriviality_check(knotted_pair, pts));
  out.push_back(nontriviality_check(plane_wave_pair, pts, "nontriviality/plane_wave"));
  out.push_back(control(nontriviality_check(violating, few)));
  out.push_back(derivative_check(knotted_pair, pts));
  out.push_back(control(derivative_check([](const SpacetimePoint& p) {
    BatemanEval be = eval_alpha_beta(p);
    be.dt_alpha *= 1.001;
    return be;
  }, few)));

  // spinor side
  const SpinorConstruction hop_spinor = hopfion_spinor;
  const SpinorConstruction pw_spinor = plane_wave_spinor;
  out.push_back(cross_formalism_check("plane_wave", pw_spinor, plane_wave_field, few));
  out.push_back(cross_formalism_check("hopfion", hop_spinor, hopfion_field, few));
  out.push_back(control(cross_formalism_check("hopfion_conjugated", [](const SpacetimePoint& p) {
    SpinorScale s = hopfion_spinor(p);
    s.kappa = std::conj(s.kappa);
    return s;
  }, hopfion_field, few)));
  out.push_back(conversion_check("plane_wave", plane_wave_pair,
                                 [](const BatemanEval& be) { return I * std::exp(I * be.alpha); },
                                 pw_spinor, few));
  const SpinorFieldFn hop_xi = [](const SpacetimePoint& p) { return hopfion_spinor(p).xi; };
  out.push_back(gsf_check("hopfion", hop_xi, few));
  out.push_back(control(gsf_check("perturbed", [](const SpacetimePoint& p) {
    Spinor2 xi = hopfion_spinor(p).xi;
    xi[0] += 0.1 * p.x * p.x;
    return xi;
  }, few)));
  const FieldSpinorFn hop_phi = [](const SpacetimePoint& p) { return phi_from(hopfion_spinor(p)); };
  const FieldSpinorFn pw_phi = [](const SpacetimePoint& p) { return phi_from(plane_wave_spinor(p)); };
  out.push_back(spinor_maxwell_check("hopfion", hop_phi, few));
  out.push_back(spinor_maxwell_check("plane_wave", pw_phi, few));
  out.push_back(control(spinor_maxwell_check("hopfion*x", [](const SpacetimePoint& p) {
    return FieldSpinor(p.x * phi_from(hopfion_spinor(p)).matrix());
  }, few)));
  out.push_back(phi_null_check("hopfion", hop_phi, few));
  out.push_back(control(phi_null_check("identity", [](const SpacetimePoint&) {
    return FieldSpinor(Matrix2c::Identity());
  }, few)));

  // Hopfion Poynting structure translates rigidly
  out.push_back(hopfion_translation_check(few, 1.0));

  for (const KnotParams& kp : opts.kp_list) {
    const Construction c = knotted_construction(kp);
    out.push_back(with_kp(nullity_check(fault_nullity ? faulty(c) : c, pts), kp));
    out.push_back(with_kp(maxwell_check(fault_maxwell ? scaled_by_x(c) : c, pts), kp));
    out.push_back(with_kp(unit_speed_check(c, few), kp));
    out.push_back(potential_curl_check(kp, few));
    out.push_back(control(potential_curl_check(kp, few, 1.01)));

    const SpinorConstruction ks = [kp](const SpacetimePoint& p) { return knotted_spinor(kp, p); };
    out.push_back(with_kp(cross_formalism_check(c.name, ks, c.field, few), kp));
    out.push_back(with_kp(conversion_check(c.name, knotted_pair,
                                           [kp](const BatemanEval& be) { return knotted_h(kp, be); }, ks, few),
                          kp));
    const FieldSpinorFn kphi = [kp](const SpacetimePoint& p) { return phi_from(knotted_spinor(kp, p)); };
    out.push_back(with_kp(spinor_maxwell_check(c.name, kphi, few), kp));
    out.push_back(with_kp(phi_null_check(c.name, kphi, few), kp));

    for (double t : opts.times) {
      CheckReport r = psi_transport_check(kp, pts, t);
      if (opts.inject_fault == "transport") r = psi_transport_check(kp, pts, t, true);
      out.push_back(r);
    }
    if (kp.q() > 1 || kp.p() > 1) {
      out.push_back(control(psi_transport_check(kp, few, 0.0, true)));
    }

    out.push_back(core_value_check(kp));
    out.push_back(core_gradient_check(kp));
    out.push_back(control(core_gradient_check(kp, 16, 0.05)));
    out.push_back(eb_rotation_check(kp, std::numbers::pi / (2.0 * kp.q())));
    out.push_back(control(eb_rotation_check(kp, std::numbers::pi / kp.q(), 16)));

    if (opts.include_tracing) tracing_checks(kp, opts, out);
    if (opts.include_quadrature) quadrature_checks(kp, opts, out);
  }

  for (CheckReport& r : out) r.seed = opts.seed;
  return out;
}

bool aggregate_pass(std::span<const CheckReport> reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.as_expected(); });
}

}  // namespace knotlight
