#include <catch_amalgamated.hpp>

#include "knotlight/conserved.hpp"
#include "knotlight/errors.hpp"

using namespace knotlight;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("ball quadrature integrates polynomials and gaussians") {
  QuadratureSpec qs{3.0, 32, 16, 16};
  const Eigen::VectorXd v = integrate_ball(qs, 2, [](const Vec3& x, Eigen::Ref<Eigen::VectorXd> o) {
    o[0] = 1.0;
    o[1] = x.z() * x.z();
  });
  const double vol = 4.0 / 3.0 * M_PI * 27.0;
  CHECK_THAT(v[0], WithinRel(vol, 1e-12));
  CHECK_THAT(v[1], WithinRel(4.0 * M_PI * std::pow(3.0, 5) / 15.0, 1e-12));
}

TEST_CASE("quadrature spec validation") {
  CHECK_NOTHROW(QuadratureSpec{}.validate());
  CHECK_THROWS_AS((QuadratureSpec{0.0, 10, 10, 10}.validate()), Error);
  CHECK_THROWS_AS((QuadratureSpec{1.0, 0, 10, 10}.validate()), Error);
}

// Frozen values at the default quadrature. Helicities and P_z reproduce
// 1/(p+q) and -p/(p+q); L_z comes out as -q/(p+q) (see the README).
TEST_CASE("conserved quantities") {
  struct Case {
    KnotParams kp;
    double h, pz, lz;
  };
  const Case c = GENERATE(Case{{1, 1}, 0.5, -0.5, -0.5}, Case{{2, 3}, 0.2, -0.4, -0.6},
                          Case{{1, 2}, 1.0 / 3, -1.0 / 3, -2.0 / 3}, Case{{2, 2}, 0.25, -0.5, -0.5});
  const ConservedSet s = conserved_set(c.kp, 0.0);
  CHECK_THAT(s.normalized.H_m, WithinRel(c.h, 2e-3));
  CHECK_THAT(s.normalized.H_e, WithinRel(c.h, 2e-3));
  CHECK_THAT(s.normalized.P.z(), WithinRel(c.pz, 1e-4));
  CHECK_THAT(s.normalized.L.z(), WithinRel(c.lz, 1e-4));
  CHECK(std::abs(s.normalized.P.x()) < 1e-3);
  CHECK(std::abs(s.normalized.P.y()) < 1e-3);
  CHECK(std::abs(s.normalized.L.x()) < 1e-3);
  CHECK(std::abs(s.normalized.L.y()) < 1e-3);
  CHECK(s.truncation_estimate < 0.05);
}

TEST_CASE("energies") {
  CHECK_THAT(conserved_set({1, 1}, 0.0).energy, WithinRel(19.739, 1e-4));
  CHECK_THAT(conserved_set({2, 3}, 0.0).energy, WithinRel(59.218, 1e-4));
}

TEST_CASE("time invariance") {
  const auto rep = time_invariance_check({1, 1}, {}, {0.0, 1.0});
  CHECK(rep.pass);
  CHECK(rep.energy_drift < 0.03);
  CHECK(rep.sets.size() == 2);
}
