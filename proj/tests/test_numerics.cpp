#include "doctest.h"

#include <cmath>
#include <cstdint>

#include "tau2/numerics.hpp"

using namespace tau2;

namespace {
const Complex kI(0.0, 1.0);
}

TEST_SUITE("scalar polynomials") {
  TEST_CASE("construction trims exact trailing zeros") {
    ScalarPoly p(std::vector<Complex>{{1.0, 0.0}, {2.0, 0.0}, {0.0, 0.0}});
    CHECK(p.degree() == 1);
    CHECK(p.coeff(0) == Complex(1.0, 0.0));
    CHECK(p.coeff(1) == Complex(2.0, 0.0));
    CHECK(p.coeff(2) == Complex(0.0, 0.0));  // beyond stored range
    CHECK(p.coeff(-1) == Complex(0.0, 0.0));

    ScalarPoly z(std::vector<Complex>{{0.0, 0.0}, {0.0, 0.0}});
    CHECK(z.is_zero());
    CHECK(z.degree() == -1);
  }

  TEST_CASE("from_roots expands (z-1)(z-2) = 2 - 3z + z^2") {
    const ScalarPoly p = ScalarPoly::from_roots({{1.0, 0.0}, {2.0, 0.0}});
    REQUIRE(p.degree() == 2);
    CHECK(std::abs(p.coeff(0) - Complex(2.0, 0.0)) < 1e-15);
    CHECK(std::abs(p.coeff(1) - Complex(-3.0, 0.0)) < 1e-15);
    CHECK(std::abs(p.coeff(2) - Complex(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(p.eval({1.0, 0.0})) < 1e-15);
    CHECK(std::abs(p.eval({2.0, 0.0})) < 1e-15);
    CHECK(std::abs(p.eval({3.0, 0.0}) - Complex(2.0, 0.0)) < 1e-15);
  }

  TEST_CASE("product and sum") {
    const ScalarPoly a(std::vector<Complex>{{1.0, 0.0}, {1.0, 0.0}});
    const ScalarPoly b(std::vector<Complex>{{-1.0, 0.0}, {1.0, 0.0}});
    const ScalarPoly prod = a * b;  // z^2 - 1
    CHECK(prod.degree() == 2);
    CHECK(std::abs(prod.coeff(0) + Complex(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(prod.coeff(1)) < 1e-15);
    const ScalarPoly sum = a + b;  // 2z
    CHECK(sum.degree() == 1);
    CHECK(std::abs(sum.coeff(0)) < 1e-15);
    CHECK(std::abs(sum.coeff(1) - Complex(2.0, 0.0)) < 1e-15);
    CHECK((a * ScalarPoly()).is_zero());
    CHECK(a.scaled({2.0, 0.0}).coeff(1) == Complex(2.0, 0.0));
  }
}

TEST_SUITE("root finder") {
  TEST_CASE("quadratic with integer roots") {
    // z^2 - 3z + 2
    const ScalarPoly p(std::vector<Complex>{{2.0, 0.0}, {-3.0, 0.0}, {1.0, 0.0}});
    std::vector<Complex> roots = poly_roots(p);
    REQUIRE(roots.size() == 2);
    std::sort(roots.begin(), roots.end(),
              [](Complex u, Complex v) { return u.real() < v.real(); });
    CHECK(std::abs(roots[0] - Complex(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(roots[1] - Complex(2.0, 0.0)) < 1e-12);
  }

  TEST_CASE("cube roots of unity") {
    // z^3 - 1
    const ScalarPoly p(std::vector<Complex>{{-1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}});
    const std::vector<Complex> roots = poly_roots(p);
    REQUIRE(roots.size() == 3);
    for (const Complex& z : roots) {
      CHECK(std::abs(std::abs(z) - 1.0) < 1e-12);
      CHECK(std::abs(z * z * z - Complex(1.0, 0.0)) < 1e-11);
    }
    // All three roots distinct.
    CHECK(min_pairwise_gap(roots) > 1.0);
  }

  TEST_CASE("double root converges through the backward-error stop") {
    const ScalarPoly p = ScalarPoly::from_roots({{1.0, 0.0}, {1.0, 0.0}});
    const std::vector<Complex> roots = poly_roots(p);
    REQUIRE(roots.size() == 2);
    for (const Complex& z : roots)
      CHECK(std::abs(z - Complex(1.0, 0.0)) < 1e-5);  // cluster, not 1e-13
  }

  TEST_CASE("deterministic across calls") {
    const ScalarPoly p(std::vector<Complex>{{1.0, 2.0}, {-3.0, 0.5}, {0.0, 1.0}, {1.0, 0.0}});
    const std::vector<Complex> a = poly_roots(p);
    const std::vector<Complex> b = poly_roots(p);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  }

  TEST_CASE("degenerate inputs") {
    CHECK_THROWS_AS(poly_roots(ScalarPoly()), ZeroPolynomial);
    CHECK(poly_roots(ScalarPoly(std::vector<Complex>{{5.0, 0.0}})).empty());
  }
}

TEST_SUITE("vandermonde and prony") {
  TEST_CASE("two nodes 1, -1") {
    const VandermondeSystem vs = prony_inverse({{1.0, 0.0}, {-1.0, 0.0}});
    // f_0(z) = (z+1)/2, f_1(z) = (z-1)/(-2) = (1-z)/2.
    CHECK(std::abs(vs.inverse_rows(0, 0) - Complex(0.5, 0.0)) < 1e-15);
    CHECK(std::abs(vs.inverse_rows(0, 1) - Complex(0.5, 0.0)) < 1e-15);
    CHECK(std::abs(vs.inverse_rows(1, 0) - Complex(0.5, 0.0)) < 1e-15);
    CHECK(std::abs(vs.inverse_rows(1, 1) + Complex(0.5, 0.0)) < 1e-15);
  }

  TEST_CASE("cube roots of unity against the closed form") {
    const Complex om = omega_root(3);
    const std::vector<Complex> nodes{{1.0, 0.0}, om, om * om};
    const VandermondeSystem vs = prony_inverse(nodes);
    // Row j of the inverse is (1/3)(1, lambda_j^{-1}, lambda_j^{-2}).
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const Complex want = omega_int_pow(3, -static_cast<long>(j) * k) / 3.0;
        CHECK(std::abs(vs.inverse_rows(j, k) - want) < 1e-14);
      }
  }

  TEST_CASE("agrees with the direct matrix inverse") {
    const std::vector<Complex> nodes{{1.4, 0.2}, {-0.3, 1.1}, {0.2, -0.8}, {2.0, 0.0}};
    const VandermondeSystem vs = prony_inverse(nodes);
    const CMatrix p = vandermonde_matrix(nodes);
    const CMatrix direct = p.inverse();
    CHECK((vs.inverse_rows - direct).norm() < 1e-12 * direct.norm());
    const CMatrix id = CMatrix::Identity(4, 4);
    CHECK((vs.inverse_rows * p - id).norm() < 1e-12);
    CHECK((p * vs.inverse_rows - id).norm() < 1e-12);
  }

  TEST_CASE("near-coincident nodes are rejected") {
    CHECK_THROWS_AS(prony_inverse({{1.0, 0.0}, {1.0 + 1e-9, 0.0}}),
                    DegenerateSpectrum);
    CHECK_THROWS_AS(prony_inverse({}), InvalidParams);
  }
}

TEST_SUITE("matrix polynomial") {
  TEST_CASE("coefficients, eval, scaled argument") {
    CMatrix a = CMatrix::Identity(2, 2);
    CMatrix b(2, 2);
    b << Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0);
    MatrixPoly p{std::vector<CMatrix>{a, b}};
    CHECK(p.degree() == 1);
    CHECK(p.dim() == 2);
    CHECK(p.coeff(5).norm() == 0.0);
    const CMatrix at2 = p.eval({2.0, 0.0});
    CHECK((at2 - (a + 2.0 * b)).norm() < 1e-15);
    const MatrixPoly q = p.scaled_argument({3.0, 0.0});
    CHECK((q.coeff(1) - 3.0 * b).norm() < 1e-15);

    const MatrixPoly prod = mat_poly_product(p, p);
    CHECK(prod.degree() == 2);
    CHECK((prod.coeff(2) - b * b).norm() < 1e-15);
    CHECK((prod.coeff(1) - 2.0 * b).norm() < 1e-15);

    CMatrix wrong = CMatrix::Identity(3, 3);
    CHECK_THROWS_AS(MatrixPoly(std::vector<CMatrix>{a, wrong}), DimMismatch);
  }
}

TEST_SUITE("determinants and kron") {
  TEST_CASE("lu_det on a fixed 2x2") {
    CMatrix m(2, 2);
    m << Complex(1, 1), Complex(2, 0), Complex(0, 1), Complex(1, -1);
    // det = (1+i)(1-i) - 2i = 2 - 2i.
    CHECK(std::abs(lu_det(m) - Complex(2.0, -2.0)) < 1e-14);
    CHECK(std::abs(lu_log_abs_det(m) - std::log(std::abs(Complex(2.0, -2.0)))) < 1e-12);
  }

  TEST_CASE("singular matrix gives -inf log det") {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = Complex(1.0, 0.0);
    CHECK(lu_log_abs_det(m) == -std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(lu_det(CMatrix::Zero(2, 3)), DimMismatch);
  }

  TEST_CASE("kron block layout") {
    CMatrix x(2, 2);
    x << Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0);
    const CMatrix id = CMatrix::Identity(2, 2);
    const CMatrix k = kron(x, id);
    CHECK(k.rows() == 4);
    CHECK(k(0, 2) == Complex(1.0, 0.0));
    CHECK(k(1, 3) == Complex(1.0, 0.0));
    CHECK(k(0, 1) == Complex(0.0, 0.0));
    const CMatrix k2 = kron(id, x);
    CHECK(k2(0, 1) == Complex(1.0, 0.0));
    CHECK(k2(2, 3) == Complex(1.0, 0.0));
    CHECK(k2(0, 2) == Complex(0.0, 0.0));
  }

  TEST_CASE("rel_residual falls back to absolute at zero scale") {
    CMatrix d = CMatrix::Identity(2, 2);
    CHECK(rel_residual(d, 0.0) == doctest::Approx(d.norm()));
    CHECK(rel_residual(d, 2.0) == doctest::Approx(d.norm() / 2.0));
  }
}

TEST_SUITE("roots of unity") {
  TEST_CASE("integer powers reduce mod N") {
    CHECK(std::abs(omega_root(4) - kI) < 1e-15);
    CHECK(std::abs(omega_int_pow(4, -1) + kI) < 1e-15);
    CHECK(std::abs(omega_int_pow(4, 7) - omega_int_pow(4, 3)) < 1e-15);
    CHECK(std::abs(omega_int_pow(2, 1) + Complex(1.0, 0.0)) < 1e-15);
    CHECK_THROWS_AS(omega_root(1), InvalidN);
  }

  TEST_CASE("half powers use the principal branch") {
    CHECK(std::abs(omega_half_pow(2, 1) - kI) < 1e-15);
    // N = 3: omega^{1} = exp(2 pi i / 3) equals half power numerator 2.
    CHECK(std::abs(omega_half_pow(3, 2) - omega_int_pow(3, 1)) < 1e-15);
    CHECK(std::abs(cpow_int(kI, 3) + kI) < 1e-15);
    CHECK(cpow_int(kI, 0) == Complex(1.0, 0.0));
  }
}

TEST_SUITE("seeded generator") {
  TEST_CASE("fixed constants, fixed stream") {
    Lcg64 rng(0);
    CHECK(rng.next() == UINT64_C(1442695040888963407));
    // Second step computed from the recurrence directly.
    const std::uint64_t second =
        UINT64_C(6364136223846793005) * UINT64_C(1442695040888963407) +
        UINT64_C(1442695040888963407);
    CHECK(rng.next() == second);
  }

  TEST_CASE("uniform01 lands in [0,1) and reproduces") {
    Lcg64 a(42), b(42);
    for (int i = 0; i < 100; ++i) {
      const double u = a.uniform01();
      CHECK(u >= 0.0);
      CHECK(u < 1.0);
      CHECK(u == b.uniform01());
    }
  }
}
