#include "doctest.h"

#include <cmath>

#include "tau2/model_config.hpp"
#include "tau2/raising_operators.hpp"

using namespace tau2;

namespace {

struct ModelBundle {
  ModelParams params;
  MatrixPoly tau;
  SpectralData sd;
  CMatrix h;
  GammaSequence gs;
};

ModelBundle make_bundle(const ModelParams& p, int jmax) {
  ModelBundle b;
  b.params = p;
  b.tau = build_tau2(p);
  const FunctionalProduct fp = functional_product(b.tau, p.N);
  b.sd = spectral_roots(fp.f, a0_constant(p), p.N, p.L);
  b.h = b.tau.coeff(1) / a0_constant(p);
  const ClockSite site = build_site_ops(p.N);
  const CMatrix z1_inv = embed(site.Z.adjoint(), 1, p.L);
  b.gs = gamma_sequence(b.h, z1_inv, p.N, jmax);
  return b;
}

ModelParams single_clock_site() {
  ClockParams cp;
  cp.alpha = {Complex(1.0, 0.0)};
  return clock_limit(2, cp);
}

}  // namespace

TEST_SUITE("commutator ladder") {
  TEST_CASE("frozen single-site ladder") {
    // H = -kappa X with kappa = d_0 d_1 / b_0 b_1, Gamma_0 = Z, and the
    // ladder closes as Gamma_1 = kappa XZ, Gamma_2 = kappa^2 Gamma_0.
    const ModelParams p = random_params(2, 1, 31);
    const ModelBundle b = make_bundle(p, 4);
    const ClockSite s = build_site_ops(2);
    const Complex kappa = p.d[0] * p.d[1] / (p.b[0] * p.b[1]);
    CHECK((b.gs.gamma[0] - s.Z).norm() < 1e-14);
    CHECK((b.gs.gamma[1] - kappa * (s.X * s.Z)).norm() < 1e-13);
    CHECK((b.gs.gamma[2] - kappa * kappa * s.Z).norm() < 1e-13);
    CHECK((b.gs.gamma[3] - kappa * kappa * kappa * (s.X * s.Z)).norm() <
          1e-13);
  }

  TEST_CASE("closed form matches the commutator route") {
    for (int n = 2; n <= 3; ++n)
      for (int l = 1; l <= 2; ++l) {
        CAPTURE(n);
        CAPTURE(l);
        const ModelParams p = random_params(n, l, 67);
        const ModelBundle b = make_bundle(p, 1);
        const CMatrix direct = gamma1_closed_form(p, build_parafermions(n, l));
        CHECK(rel_residual(b.gs.gamma[1] - direct, direct.norm()) < 1e-11);
      }
  }

  TEST_CASE("truncation closes the ladder") {
    const ModelParams p = random_params(3, 2, 5);
    const ModelBundle b = make_bundle(p, 3 * 2 + 3);
    const std::vector<double> res = truncation_residuals(b.gs, b.sd, 3);
    REQUIRE(res.size() == 4);
    for (double r : res) CHECK(r < 1e-9);
  }
}

TEST_SUITE("companion matrix") {
  TEST_CASE("frozen layout") {
    SpectralData sd;
    sd.N = 2;
    sd.L = 2;
    sd.s = {Complex(1.0, 0.0), Complex(-0.25, 0.5), Complex(0.125, 0.0)};
    const CMatrix c = companion_matrix(sd);
    REQUIRE(c.rows() == 4);
    CHECK(c(0, 1) == Complex(1.0, 0.0));
    CHECK(c(1, 2) == Complex(1.0, 0.0));
    CHECK(c(2, 3) == Complex(1.0, 0.0));
    CHECK(c(0, 0) == Complex(0.0, 0.0));
    CHECK(c(3, 0) == -sd.s[2]);
    CHECK(c(3, 2) == -sd.s[1]);
    CHECK(c(3, 1) == Complex(0.0, 0.0));
    CHECK(c(3, 3) == Complex(0.0, 0.0));
  }

  TEST_CASE("drives the ladder and carries the right spectrum") {
    const ModelParams p = random_params(3, 2, 41);
    const ModelBundle b = make_bundle(p, 3 * 2);
    const CMatrix c = companion_matrix(b.sd);
    CHECK(companion_action_residual(b.h, b.gs, c) < 1e-9);

    const double radius =
        1.0 + std::abs(b.sd.lambda[0]);  // lambdas sorted by modulus
    const ScalarPoly cp = charpoly_interpolated(c, radius);
    CHECK(charpoly_vanishing_residual(cp, b.sd.lambda) < 1e-9);
    // Same characteristic polynomial as prod (z - lambda_i).
    const ScalarPoly want = ScalarPoly::from_roots(b.sd.lambda);
    for (int k = 0; k <= want.degree(); ++k)
      CHECK(std::abs(cp.coeff(k) - want.coeff(k)) <
            1e-9 * want.coeff_scale());
  }

  TEST_CASE("interpolated charpoly on a fixed diagonal matrix") {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = Complex(1.0, 0.0);
    m(1, 1) = Complex(2.0, 0.0);
    const ScalarPoly cp = charpoly_interpolated(m, 3.0);
    CHECK(std::abs(cp.coeff(0) - Complex(2.0, 0.0)) < 1e-12);
    CHECK(std::abs(cp.coeff(1) + Complex(3.0, 0.0)) < 1e-12);
    CHECK(std::abs(cp.coeff(2) - Complex(1.0, 0.0)) < 1e-12);
  }
}

TEST_SUITE("diagonalizing combinations") {
  TEST_CASE("frozen pair for the single clock site") {
    // r_1^2 = 1 and lambda = (r, -r), so GammaHat_0 = (Z + XZ/r)/2 and
    // GammaHat_1 = (Z - XZ/r)/2; the formula is written in the reported
    // root because the sector pin may return either square root here.
    const ModelBundle b = make_bundle(single_clock_site(), 1);
    const Complex r = b.sd.r[0];
    CHECK(std::abs(r * r - Complex(1.0, 0.0)) < 1e-13);
    const VandermondeSystem vs = prony_inverse(b.sd.lambda);
    const HattedGammas hg = build_gamma_hat(b.gs, vs, 2, 1);
    REQUIRE(hg.op.size() == 2);
    const ClockSite s = build_site_ops(2);
    const CMatrix xz = s.X * s.Z;
    CHECK((hg.at(0, 1) - 0.5 * (s.Z + xz / r)).norm() < 1e-13);
    CHECK((hg.at(1, 1) - 0.5 * (s.Z - xz / r)).norm() < 1e-13);
    // q wraps mod N.
    CHECK((hg.at(2, 1) - hg.at(0, 1)).norm() == 0.0);
    CHECK((hg.at(-1, 1) - hg.at(1, 1)).norm() == 0.0);
  }

  TEST_CASE("eigencommutator, resynthesis, intertwining") {
    for (int n = 2; n <= 3; ++n) {
      CAPTURE(n);
      const ModelParams p = random_params(n, 2, 91);
      const ModelBundle b = make_bundle(p, 2 * n);
      const VandermondeSystem vs = prony_inverse(b.sd.lambda);
      const HattedGammas hg = build_gamma_hat(b.gs, vs, n, 2);
      CHECK(eigencommutator_residual(b.h, hg, b.sd) < 1e-9);
      CHECK(gamma_reconstruction_residual(b.gs, hg, b.sd) < 1e-10);
      CHECK(intertwining_residual(hg, b.tau, b.sd) < 1e-9);
    }
  }
}
