#include <catch_amalgamated.hpp>

#include "knotlight/errors.hpp"
#include "knotlight/spinor.hpp"
#include "knotlight/verification.hpp"

using namespace knotlight;

namespace {
bool near(cplx a, cplx b, double tol = 1e-14) { return std::abs(a - b) <= tol; }
bool near(const Matrix2c& a, const Matrix2c& b, double tol = 1e-14) {
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}
}  // namespace

TEST_CASE("epsilon and symbols") {
  const Matrix2c& e = epsilon();
  CHECK(near(e * e, -Matrix2c::Identity()));
  // g^0 is identity / sqrt 2; each symbol is Hermitian
  const auto& g = ivdw_symbols();
  CHECK(near(g[0], Matrix2c::Identity() / std::sqrt(2.0)));
  for (const auto& m : g) CHECK(near(m, m.adjoint()));
}

TEST_CASE("field spinor construction") {
  Spinor2 xi(1, 0);
  CHECK(near(phi_from(xi, 2.0).matrix(), (Matrix2c() << 2, 0, 0, 0).finished()));
  CHECK(near(phi_from(Spinor2(1, 1), 1.0).matrix(), Matrix2c::Ones()));
  Matrix2c asym;
  asym << 1, 2, 3, 4;
  CHECK_THROWS_AS(FieldSpinor(asym), Error);
  CHECK_THROWS_AS(field_from_phi(asym), Error);
}

TEST_CASE("rank-one field spinors are null", "[property]") {
  auto seed = GENERATE(1, 2, 3, 4, 5, 6, 7, 8);
  std::srand(seed);
  const Spinor2 xi = Spinor2::Random();
  const cplx kappa{std::rand() / double(RAND_MAX), -0.5};
  const FieldSpinor phi = phi_from(xi, kappa);
  CHECK(std::abs(phi_contraction(phi)) < 1e-14);
  const RSValue v = field_from_phi(phi);
  CHECK(std::abs(v.E.dot(v.B)) < 1e-13);
  CHECK(std::abs(v.E.squaredNorm() - v.B.squaredNorm()) < 1e-13);
  // the field tensor is real antisymmetric
  const Eigen::Matrix4d F = field_tensor(phi);
  CHECK((F + F.transpose()).norm() < 1e-14);
  // the congruence vector is null
  const Eigen::Vector4d k = congruence_vector(xi);
  CHECK(std::abs(k[0] * k[0] - k.tail<3>().squaredNorm()) < 1e-13);
}

TEST_CASE("zero spinor gives zero field") {
  CHECK(field_from_phi(FieldSpinor()).F.norm() == 0.0);
}

TEST_CASE("named spinors at the origin") {
  const SpinorScale k = knotted_spinor({1, 1}, {0, 0, 0, 0});
  CHECK(near(k.xi[0], -I));
  CHECK(near(k.xi[1], 0.0));
  CHECK(near(k.kappa, 4.0));
  const SpinorScale h = hopfion_spinor({0, 0, 0, 0});
  CHECK(near(h.xi[0], -I));
  CHECK(near(h.kappa, 1.0));
  CHECK(near(knotted_spinor({2, 3}, {0, 0, 0, 0}).kappa, 0.0));
}

TEST_CASE("knotted (1,1) spinor is four times the hopfion spinor") {
  for (const auto& pt : sample_points(20, -1, 1, 9)) {
    const SpinorScale k = knotted_spinor({1, 1}, pt);
    const SpinorScale h = hopfion_spinor(pt);
    CHECK((k.xi - h.xi).norm() < 1e-14);
    CHECK(near(k.kappa, 4.0 * h.kappa, 1e-12 * std::abs(k.kappa)));
  }
}

TEST_CASE("spinor reconstruction matches the vector fields") {
  const auto pts = sample_points(100, 0, 1.3, 4);
  CHECK(cross_formalism_check("plane_wave", plane_wave_spinor, plane_wave_field, pts).pass);
  CHECK(cross_formalism_check("hopfion", hopfion_spinor, hopfion_field, pts).pass);
  for (const KnotParams kp : {KnotParams(2, 3), KnotParams(2, 5), KnotParams(2, 2)}) {
    CHECK(cross_formalism_check("knotted", [kp](const SpacetimePoint& p) { return knotted_spinor(kp, p); },
                                [kp](const SpacetimePoint& p) { return knotted_field(kp, p); }, pts)
              .pass);
  }
}

TEST_CASE("Bateman to spinor conversion") {
  SECTION("plane wave") {
    const BatemanSpinor bs = bateman_to_spinor(plane_wave_pair({0, 0.3, 0.1, 0.2}));
    // xi is proportional to (0, -1)
    CHECK(std::abs(bs.spinor.xi[0]) < 1e-14);
    CHECK(std::abs(bs.spinor.xi[1]) > 0.1);
    const auto pts = sample_points(50, 0, 1, 3);
    CHECK(conversion_check("plane_wave", plane_wave_pair,
                           [](const BatemanEval& be) { return I * std::exp(I * be.alpha); }, plane_wave_spinor, pts)
              .pass);
  }
  SECTION("knotted pair at random points") {
    const auto pts = sample_points(100, 0, 1, 8);
    const KnotParams kp(2, 3);
    CHECK(conversion_check(
              "knotted", eval_alpha_beta,
              [kp](const BatemanEval& be) { return 6.0 * be.alpha * be.beta * be.beta; },
              [kp](const SpacetimePoint& p) { return knotted_spinor(kp, p); }, pts)
              .pass);
  }
  SECTION("axial branch on the z axis") {
    const SpacetimePoint pt{0.0, 0.0, 0.0, 0.6};
    const BatemanEval be = eval_alpha_beta(pt);
    const BatemanSpinor bs = bateman_to_spinor(be);
    CHECK(bs.branch == ConversionBranch::Axial);
    CHECK(std::isfinite(std::abs(bs.spinor.kappa)));
    const Matrix2c converted = phi_from(bs.spinor.xi, bs.spinor.kappa).matrix();
    const Matrix2c ref = phi_from(knotted_spinor({1, 1}, pt)).matrix();
    CHECK(near(converted, ref, 1e-10 * ref.cwiseAbs().maxCoeff()));
  }
  SECTION("off axis uses the generic branch") {
    CHECK(bateman_to_spinor(eval_alpha_beta({0, 0.5, 0.2, 0.1})).branch == ConversionBranch::Generic);
  }
}

TEST_CASE("geodesic shear-free condition") {
  const SpacetimePoint pt{0.1, 0.3, -0.2, 0.4};
  SECTION("constant spinor is exactly GSF") {
    const Spinor2 r = gsf_residual([](const SpacetimePoint& p) { return plane_wave_spinor(p).xi; }, pt);
    CHECK(r.norm() == 0.0);
  }
  const auto pts = sample_points(100, 0, 1, 12);
  CHECK(gsf_check("hopfion", [](const SpacetimePoint& p) { return hopfion_spinor(p).xi; }, pts).pass);
  CHECK_FALSE(gsf_check("perturbed",
                        [](const SpacetimePoint& p) {
                          Spinor2 xi = hopfion_spinor(p).xi;
                          xi[0] += 0.1 * p.x * p.x;
                          return xi;
                        },
                        pts)
                  .pass);
}

TEST_CASE("spinor Maxwell equation") {
  const auto pts = sample_points(100, 0, 1, 13);
  CHECK(spinor_maxwell_check("hopfion", [](const SpacetimePoint& p) { return phi_from(hopfion_spinor(p)); }, pts)
            .pass);
  CHECK(spinor_maxwell_check("knotted(2,3)",
                             [](const SpacetimePoint& p) { return phi_from(knotted_spinor({2, 3}, p)); }, pts)
            .pass);
  CHECK_FALSE(spinor_maxwell_check(
                  "x*hopfion",
                  [](const SpacetimePoint& p) { return FieldSpinor(p.x * phi_from(hopfion_spinor(p)).matrix()); },
                  pts)
                  .pass);
}

TEST_CASE("congruence vector follows the Poynting direction") {
  for (const auto& p : sample_points(200, 0, 1.3, 3)) {
    for (const KnotParams kp : {KnotParams(1, 1), KnotParams(2, 3)}) {
      const Eigen::Vector4d k = congruence_vector(knotted_spinor(kp, p).xi);
      const Vec3 S = eval_knotted_field(kp, p).S;
      if (S.norm() < 1e-200) continue;
      const Vec3 ks = k.tail<3>();
      CHECK(k[0] > 0.0);
      CHECK((ks / ks.norm() - S / S.norm()).norm() < 1e-12);
    }
  }
}
