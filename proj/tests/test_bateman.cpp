#include <catch_amalgamated.hpp>

#include "knotlight/bateman.hpp"
#include "knotlight/errors.hpp"
#include "knotlight/finite_difference.hpp"
#include "knotlight/verification.hpp"

#include <random>

using namespace knotlight;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
bool near(cplx a, cplx b, double tol = 1e-14) { return std::abs(a - b) <= tol; }
bool near(const Complex3& a, const Complex3& b, double tol = 1e-14) { return (a - b).norm() <= tol; }
}  // namespace

TEST_CASE("knot parameters") {
  CHECK(KnotParams(2, 3).gcd() == 1);
  CHECK(KnotParams(4, 6).gcd() == 2);
  CHECK_THROWS_AS(KnotParams(0, 3), Error);
  CHECK_THROWS_AS(KnotParams(2, -1), Error);
}

TEST_CASE("hopfion building blocks") {
  ABD o = eval_abd({0, 0, 0, 0});
  CHECK(near(o.a, 0.0));
  CHECK(near(o.b, -I));
  CHECK(near(o.d, 1.0));
  ABD t1 = eval_abd({1, 0, 0, 0});
  CHECK(near(t1.b, cplx(1, -1)));
  CHECK(near(t1.d, 2.0 * I));
  ABD x1 = eval_abd({0, 1, 0, 0});
  CHECK(near(x1.a, 1.0));
  CHECK(near(x1.d, 2.0));
}

TEST_CASE("knotted pair values") {
  CHECK(near(eval_alpha_beta({0, 0, 0, 0}).alpha, -1.0));
  CHECK(near(eval_alpha_beta({0, 0, 0, 0}).beta, 0.0));
  CHECK(near(eval_alpha_beta({1, 0, 0, 0}).alpha, I));
  CHECK(near(eval_alpha_beta({0, 1, 0, 0}).alpha, 0.0));
  CHECK(near(eval_alpha_beta({0, 1, 0, 0}).beta, 1.0));
}

TEST_CASE("closed-form derivatives agree with central differences") {
  const auto pts = sample_points(200, -2.0, 2.0, 7);
  const auto rep = derivative_check(eval_alpha_beta, pts);
  CHECK(rep.max_residual < 1e-7);
}

TEST_CASE("ipow") {
  CHECK(near(ipow(I, 0), 1.0));
  CHECK(near(ipow(I, 2), -1.0));
  CHECK(near(ipow(cplx(1, 1), 3), cplx(-2, 2)));
}

TEST_CASE("the (1,1) field is a global multiple of the hopfion") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const KnotParams kp(1, 1);
  for (int i = 0; i < 10; ++i) {
    const SpacetimePoint pt{u(rng), u(rng), u(rng), u(rng)};
    const Complex3 k = knotted_field(kp, pt);
    const Complex3 h = hopfion_field(pt);
    for (int c = 0; c < 3; ++c) {
      if (std::abs(h[c]) < 1e-8) continue;
      CHECK(near(k[c] / h[c], kHopfionFamilyFactor, 1e-10));
    }
  }
}

TEST_CASE("knotted field values") {
  CHECK(knotted_field({2, 3}, {0, 0, 0, 0}).norm() == 0.0);
  // alpha = 0 at (0,1,0,0), so the p = 2 field vanishes there too
  CHECK(knotted_field({2, 3}, {0, 1, 0, 0}).norm() == 0.0);
  const Complex3 F = knotted_field({2, 3}, {0, 1, 0.5, 0.2});
  CHECK(F.norm() > 0.0);
  CHECK(std::abs(dot(F, F)) < 1e-12 * F.squaredNorm());
}

TEST_CASE("hopfion closed form") {
  CHECK(near(hopfion_field({0, 0, 0, 0}), Complex3(-1, I, 0)));
  // a = 0, b = -1 - i, d = 2: F = (b^2, -i b^2, 0)/8 with b^2 = 2i
  CHECK(near(hopfion_field({0, 0, 0, 1}), Complex3(0.25 * I, 0.25, 0)));
  const RSValue o = eval_hopfion({0, 0, 0, 0});
  CHECK(near(Complex3(o.E.cast<cplx>()), Complex3(-1, 0, 0)));
  CHECK(near(Complex3(o.B.cast<cplx>()), Complex3(0, 1, 0)));
}

TEST_CASE("plane wave") {
  CHECK(near(plane_wave_field({0, 0, 0, 0}), Complex3(1, I, 0)));
  CHECK(near(plane_wave_field({0.7, 0, 0, 0.7}), Complex3(1, I, 0)));
  for (const auto& pt : sample_points(50, -3, 3, 1)) {
    const RSValue v = eval_plane_wave(pt);
    CHECK_THAT(v.E.norm(), WithinAbs(1.0, 1e-14));
    CHECK_THAT(v.B.norm(), WithinAbs(1.0, 1e-14));
  }
}

TEST_CASE("complex potential") {
  CHECK(near(eval_potential({1, 1}, {0, 0, 0, 0}), Complex3(-2, 2.0 * I, 0)));
  CHECK(eval_potential({2, 3}, {0, 0, 0, 0}).norm() == 0.0);
  const auto pts = sample_points(100, 0, 1, 5);
  CHECK(potential_curl_check({2, 3}, pts).pass);
}

TEST_CASE("Bateman constraint") {
  CHECK(bateman_constraint_residual(SpacetimePoint{0, 0, 0, 0}) < 1e-12);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  int tested = 0;
  while (tested < 100) {
    const SpacetimePoint pt{u(rng), u(rng), u(rng), u(rng)};
    if (pt.r2() >= 25.0) continue;
    ++tested;
    const BatemanEval be = eval_alpha_beta(pt);
    CHECK(bateman_constraint_residual(be) <= 1e-10 * cross(be.grad_alpha, be.grad_beta).norm());
  }
  SECTION("perturbed pair is rejected") {
    BatemanEval be = eval_alpha_beta({0.3, 0.4, -0.2, 0.9});
    be.beta += 0.1 * 0.4;
    be.grad_beta.x() += 0.1;
    CHECK(bateman_constraint_residual(be) > 1e-3);
  }
}

TEST_CASE("nontriviality") {
  const auto pw = nontriviality_residual(plane_wave_pair({0.2, 1, 2, 3}));
  CHECK(pw.alpha == 0.0);
  CHECK(pw.beta == 0.0);
  const auto pts = sample_points(100, -1, 1, 2);
  CHECK(nontriviality_check(eval_alpha_beta, pts).pass);

  SECTION("static pair (x, y) passes nontriviality but not the constraint") {
    BatemanEval be;
    be.alpha = 0.3;
    be.beta = -0.2;
    be.grad_alpha = Complex3(1, 0, 0);
    be.grad_beta = Complex3(0, 1, 0);
    CHECK(nontriviality_residual(be).alpha == 0.0);
    CHECK(bateman_constraint_residual(be) > 0.5);
  }
}

TEST_CASE("constructions are null and satisfy Maxwell", "[property]") {
  const auto pts = sample_points(300, -1.5, 1.5, GENERATE(1u, 2u, 3u));
  for (const Construction& c : {plane_wave_construction(), hopfion_construction(), knotted_construction({3, 4}),
                                knotted_construction({2, 3})}) {
    INFO(c.name);
    CHECK(nullity_check(c, pts).pass);
    // (3,4) vanishes to third order on the z axis; the O(h^2) truncation
    // error relative to the small field there needs the finer step.
    CHECK(maxwell_check(c, pts, c.name == "knotted(3,4)" ? 1e-5 : 1e-4).pass);
    CHECK(unit_speed_check(c, pts).pass);
  }
}

TEST_CASE("field sign convention: d_t F = -i curl F") {
  // The opposite sign must fail clearly.
  const SpacetimePoint pt{0.3, 0.2, -0.4, 0.5};
  const auto g = spacetime_gradient(hopfion_field, pt);
  const Complex3 rot{g[2].z() - g[3].y(), g[3].x() - g[1].z(), g[1].y() - g[2].x()};
  CHECK((g[0] + I * rot).norm() < 1e-7 * g[0].norm());
  CHECK((g[0] - I * rot).norm() > 0.5 * g[0].norm());
}
