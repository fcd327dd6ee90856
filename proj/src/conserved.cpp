#include "knotlight/conserved.hpp"

#include "knotlight/errors.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

namespace knotlight {

void QuadratureSpec::validate() const {
  if (!(R > 1.0) || n_r < 1 || n_theta < 1 || n_phi < 1) {
    throw Error(ErrorKind::InvalidArgument, "quadrature needs R > 1 and positive node counts");
  }
}

namespace {

struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

GaussRule gauss_legendre(int n, double a, double b) {
  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)>
      table(gsl_integration_glfixed_table_alloc(std::size_t(n)), &gsl_integration_glfixed_table_free);
  GaussRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < n; ++i) {
    gsl_integration_glfixed_point(a, b, std::size_t(i), &rule.x[i], &rule.w[i], table.get());
  }
  return rule;
}

}  // namespace

Eigen::VectorXd integrate_ball(const QuadratureSpec& qs, int n_out, const BallIntegrand& f) {
  qs.validate();
  const GaussRule radial = gauss_legendre(qs.n_r, 0.0, qs.R);
  const GaussRule polar = gauss_legendre(qs.n_theta, -1.0, 1.0);
  const double dphi = 2.0 * std::numbers::pi / qs.n_phi;

  Eigen::VectorXd sum = Eigen::VectorXd::Zero(n_out);
  Eigen::VectorXd comp = Eigen::VectorXd::Zero(n_out);
  Eigen::VectorXd shell(n_out), value(n_out);

  for (int i = 0; i < qs.n_r; ++i) {
    const double r = radial.x[i];
    shell.setZero();
    for (int j = 0; j < qs.n_theta; ++j) {
      const double ct = polar.x[j];
      const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      for (int k = 0; k < qs.n_phi; ++k) {
        const double phi = dphi * k;
        const Vec3 x{r * st * std::cos(phi), r * st * std::sin(phi), r * ct};
        value.setZero();
        f(x, value);
        shell += polar.w[j] * value;
      }
    }
    // Neumaier accumulation across shells
    const Eigen::VectorXd add = (radial.w[i] * r * r * dphi) * shell;
    for (int m = 0; m < n_out; ++m) {
      const double t = sum[m] + add[m];
      comp[m] += std::abs(sum[m]) >= std::abs(add[m]) ? (sum[m] - t) + add[m] : (add[m] - t) + sum[m];
      sum[m] = t;
    }
  }
  return sum + comp;
}

namespace {

// [energy, Px, Py, Pz, Lx, Ly, Lz, H_m, H_e]
Eigen::VectorXd raw_charges(const KnotParams& kp, double t, const QuadratureSpec& qs) {
  return integrate_ball(qs, 9, [&](const Vec3& x, Eigen::Ref<Eigen::VectorXd> out) {
    const SpacetimePoint pt{t, x};
    const RSValue v = eval_knotted_field(kp, pt);
    const Complex3 C = eval_potential(kp, pt);
    const Vec3 L = x.cross(v.S);
    out << v.u, v.S.x(), v.S.y(), v.S.z(), L.x(), L.y(), L.z(), Vec3(C.imag()).dot(v.B),
        Vec3(C.real()).dot(v.E);
  });
}

ConservedSet assemble(const Eigen::VectorXd& raw) {
  ConservedSet cs;
  cs.energy = raw[0];
  cs.P = raw.segment<3>(1);
  cs.L = raw.segment<3>(4);
  cs.H_m = raw[7];
  cs.H_e = raw[8];
  cs.normalized.P = cs.P / cs.energy;
  cs.normalized.L = cs.L / cs.energy;
  cs.normalized.H_m = cs.H_m / cs.energy;
  cs.normalized.H_e = cs.H_e / cs.energy;
  return cs;
}

double rel_change(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), 1e-300); }

}  // namespace

ConservedSet conserved_set(const KnotParams& kp, double t, const QuadratureSpec& qs) {
  ConservedSet cs = assemble(raw_charges(kp, t, qs));
  QuadratureSpec half = qs;
  half.R = qs.R / 2.0;
  if (half.R > 1.0) {
    const ConservedSet inner = assemble(raw_charges(kp, t, half));
    cs.truncation_estimate = std::max({rel_change(cs.energy, inner.energy),
                                       rel_change(cs.P.norm(), inner.P.norm()),
                                       rel_change(cs.L.norm(), inner.L.norm()),
                                       rel_change(cs.H_m, inner.H_m),
                                       rel_change(cs.H_e, inner.H_e)});
  } else {
    cs.truncation_estimate = std::numeric_limits<double>::infinity();
  }
  return cs;
}

TimeInvarianceReport time_invariance_check(const KnotParams& kp, const QuadratureSpec& qs,
                                           const std::vector<double>& times) {
  TimeInvarianceReport rep;
  rep.times = times;
  for (double t : times) rep.sets.push_back(conserved_set(kp, t, qs));
  for (std::size_t i = 0; i < rep.sets.size(); ++i) {
    const ConservedSet& a = rep.sets[i];
    rep.energy_drift = std::max(rep.energy_drift, rel_change(rep.sets.front().energy, a.energy));
    for (std::size_t j = i + 1; j < rep.sets.size(); ++j) {
      const ConservedSet& b = rep.sets[j];
      rep.helicity_drift = std::max({rep.helicity_drift, rel_change(a.normalized.H_m, b.normalized.H_m),
                                     rel_change(a.normalized.H_e, b.normalized.H_e)});
      rep.momentum_drift = std::max(rep.momentum_drift, rel_change(a.normalized.P.z(), b.normalized.P.z()));
      rep.angular_drift = std::max(rep.angular_drift, rel_change(a.normalized.L.z(), b.normalized.L.z()));
    }
  }
  rep.pass = std::max({rep.energy_drift, rep.helicity_drift, rep.momentum_drift, rep.angular_drift}) <=
             rep.tolerance;
  return rep;
}

}  // namespace knotlight
