#include "doctest.h"

#include <cmath>

#include "tau2/clock_algebra.hpp"
#include "tau2/model_config.hpp"
#include "tau2/transfer_matrix.hpp"

using namespace tau2;

namespace {

ModelParams single_site_params(Complex a0, Complex a1, Complex b0, Complex b1,
                               Complex c0, Complex c1, Complex d0, Complex d1) {
  ModelParams p;
  p.N = 3;
  p.L = 1;
  p.a = {a0, a1};
  p.b = {b0, b1};
  p.c = {c0, c1};
  p.d = {d0, d1};
  return p;
}

}  // namespace

TEST_SUITE("couplings") {
  TEST_CASE("boundary accessors pin the frozen edge values") {
    const ModelParams p = random_params(3, 2, 11);
    CHECK(p.a_at(-1) == Complex(0.0, 0.0));
    CHECK(p.c_at(-1) == Complex(0.0, 0.0));
    CHECK(p.d_at(-1) == Complex(0.0, 0.0));
    CHECK(p.b_at(-1) == Complex(1.0, 0.0));
    CHECK(p.a_at(4) == Complex(0.0, 0.0));
    CHECK(p.b_at(4) == Complex(1.0, 0.0));
    CHECK(p.a_at(0) == p.a[0]);
    CHECK(p.d_at(3) == p.d[3]);
  }

  TEST_CASE("validation rejects malformed inputs") {
    ModelParams p = random_params(2, 1, 3);
    CHECK_NOTHROW(p.validate());
    p.b[1] = Complex(0.0, 0.0);
    CHECK_THROWS_AS(p.validate(), InvalidParams);
    p = random_params(2, 1, 3);
    p.a.pop_back();
    CHECK_THROWS_AS(p.validate(), InvalidParams);
    p = random_params(2, 1, 3);
    p.N = 1;
    CHECK_THROWS_AS(p.validate(), InvalidParams);
  }
}

TEST_SUITE("single site transfer matrix") {
  // For L = 1 the chain has one face pair and the matrix closes in the
  // frozen boundary spins on both sides:
  //   tau2(t) = b_0 b_1 * 1 - d_0 d_1 * (omega t) * X,
  // independent of a and c.
  TEST_CASE("closed form for generic couplings") {
    const ModelParams p = single_site_params(
        {1.3, 0.4}, {-0.2, 0.9}, {0.8, 0.1}, {1.1, -0.3},
        {0.5, 0.5}, {-0.7, 0.2}, {0.9, -0.4}, {0.3, 0.8});
    const MatrixPoly tau = build_tau2(p);
    REQUIRE(tau.degree() == 1);
    REQUIRE(tau.dim() == 3);

    const ClockSite s = build_site_ops(3);
    const Complex b01 = p.b[0] * p.b[1];
    const Complex d01 = p.d[0] * p.d[1];
    const CMatrix id = CMatrix::Identity(3, 3);
    CHECK((tau.coeff(0) - b01 * id).norm() < 1e-14);
    // Coefficient 1 multiplies (omega t); the stored matrix is -d0 d1 X.
    CHECK((tau.coeff(1) + d01 * s.X).norm() < 1e-14);

    // a and c do not enter at L = 1.
    ModelParams q = p;
    q.a = {Complex(9.0, 9.0), Complex(-3.0, 7.0)};
    q.c = {Complex(2.0, -5.0), Complex(4.0, 4.0)};
    const MatrixPoly tau_q = build_tau2(q);
    for (int m = 0; m <= 1; ++m)
      CHECK((tau.coeff(m) - tau_q.coeff(m)).norm() < 1e-15);
  }

  TEST_CASE("functional product and spectrum at L = 1") {
    const ModelParams p = single_site_params(
        {1.3, 0.4}, {-0.2, 0.9}, {0.8, 0.1}, {1.1, -0.3},
        {0.5, 0.5}, {-0.7, 0.2}, {0.9, -0.4}, {0.3, 0.8});
    const MatrixPoly tau = build_tau2(p);
    const FunctionalProduct fp = functional_product(tau, 3);
    const Complex b01 = p.b[0] * p.b[1];
    const Complex d01 = p.d[0] * p.d[1];
    // prod_k (b01 - d01 omega^{k+1} t) = b01^3 - d01^3 t^3.
    REQUIRE(fp.f.degree() == 1);
    CHECK(std::abs(fp.f.coeff(0) - b01 * b01 * b01) < 1e-12);
    CHECK(std::abs(fp.f.coeff(1) + d01 * d01 * d01) < 1e-12);
    CHECK(fp.off_identity < 1e-14);
    CHECK(fp.off_period < 1e-14);

    const SpectralData sd = spectral_roots(fp.f, a0_constant(p), 3, 1);
    REQUIRE(sd.r.size() == 1);
    REQUIRE(sd.s.size() == 2);
    // s_1 = f_1 / f_0 = -(d01 / b01)^3 and r_1^3 = -s_1.
    const Complex s1_want = -cpow_int(d01 / b01, 3);
    CHECK(std::abs(sd.s[1] - s1_want) < 1e-12);
    CHECK(std::abs(cpow_int(sd.r[0], 3) + s1_want) < 1e-12);
    // Sector pin: arg(r_1) in [0, 2pi/3).
    const double arg = std::arg(sd.r[0]) < 0.0
                           ? std::arg(sd.r[0]) + 2.0 * kPi
                           : std::arg(sd.r[0]);
    CHECK(arg < 2.0 * kPi / 3.0 + 1e-12);
    CHECK(root_relation_residual(sd) < 1e-12);
    CHECK(spectrum_gap_ratio(sd) < 1.0);
    REQUIRE(sd.lambda.size() == 3);
    CHECK(std::abs(sd.lambda[1] - sd.r[0] * omega_root(3)) < 1e-14);
  }
}

TEST_SUITE("face weights") {
  TEST_CASE("frozen diagonal weight") {
    const ModelParams p = random_params(3, 2, 5);
    // Face j couples positions 2j-1 and 2j. Equal spins on both rows give
    // constant b_{2j-1} b_{2j} and linear -omega^{s_j - s_{j+1} + 1}
    // c_{2j-1} c_{2j}.
    const AffineWeight w = irf_weight(p, 1, 0, 0, 0, 0);
    CHECK(std::abs(w.constant - p.b[1] * p.b[2]) < 1e-14);
    CHECK(std::abs(w.linear + omega_root(3) * p.c[1] * p.c[2]) < 1e-14);
  }

  TEST_CASE("selection rule zeroes distant rows") {
    const ModelParams p = random_params(3, 2, 5);
    // s'_j = s_j + 1 is outside {s_j, s_j - 1}.
    const AffineWeight w = irf_weight(p, 1, 0, 0, 0, 1);
    CHECK(w.constant == Complex(0.0, 0.0));
    CHECK(w.linear == Complex(0.0, 0.0));
  }
}

TEST_SUITE("global structure") {
  TEST_CASE("constant coefficient is A0 times identity") {
    const ModelParams p = random_params(3, 2, 21);
    const MatrixPoly tau = build_tau2(p);
    const Complex a0 = a0_constant(p);
    CHECK(std::abs(a0 - p.b[0] * p.b[1] * p.b[2] * p.b[3]) < 1e-14);
    const CMatrix id = CMatrix::Identity(9, 9);
    CHECK((tau.coeff(0) - a0 * id).norm() < 1e-12 * std::abs(a0));
    CHECK(tau.degree() == 2);
  }

  TEST_CASE("degree never exceeds L") {
    const Tau2Build tb = build_tau2_detailed(random_params(2, 3, 9));
    CHECK(tb.poly.degree() <= 3);
    CHECK(tb.overflow < 1e-12);
  }

  TEST_CASE("boundary spin drops out") {
    const ModelParams p = random_params(4, 2, 33);
    const MatrixPoly t0 = build_tau2(p, 0);
    const MatrixPoly t1 = build_tau2(p, 1);
    const MatrixPoly t3 = build_tau2(p, 3);
    for (int m = 0; m <= 2; ++m) {
      CHECK((t0.coeff(m) - t1.coeff(m)).norm() < 1e-12);
      CHECK((t0.coeff(m) - t3.coeff(m)).norm() < 1e-12);
    }
  }

  TEST_CASE("one parameter family commutes") {
    const ModelParams p = random_params(3, 2, 77);
    const MatrixPoly tau = build_tau2(p);
    CHECK(commuting_family_residual(tau) < 1e-10);
    // Direct check at two spectral parameters.
    const CMatrix m1 = tau.eval({0.37, 0.21});
    const CMatrix m2 = tau.eval({-0.54, 0.66});
    CHECK(rel_residual(m1 * m2 - m2 * m1, (m1 * m2).norm()) < 1e-12);
  }

  TEST_CASE("functional product scalar across sizes") {
    for (int n = 2; n <= 3; ++n)
      for (int l = 1; l <= 2; ++l) {
        CAPTURE(n);
        CAPTURE(l);
        const ModelParams p = random_params(n, l, 13);
        const FunctionalProduct fp = functional_product(build_tau2(p), n);
        CHECK(fp.f.degree() == l);
        CHECK(fp.off_identity < 1e-11);
        CHECK(fp.off_period < 1e-11);
        CHECK(std::abs(fp.f.coeff(0) - cpow_int(a0_constant(p), n)) <
              1e-11 * std::abs(fp.f.coeff(0)));
      }
  }

  TEST_CASE("coincident clock couplings trip the degeneracy gate") {
    // alpha_1 = alpha_2, gamma = 0 collapses the two modes.
    ClockParams cp;
    cp.alpha = {Complex(1.0, 0.0), Complex(1.0, 0.0)};
    cp.gamma = {Complex(0.0, 0.0)};
    const ModelParams p = clock_limit(2, cp);
    const FunctionalProduct fp = functional_product(build_tau2(p), 2);
    CHECK_THROWS_AS(spectral_roots(fp.f, a0_constant(p), 2, 2),
                    DegenerateSpectrum);
  }
}
