#pragma once

#include <cstdint>
#include <vector>

#include "tau2/types.hpp"

namespace tau2 {

// Polynomial with complex coefficients, stored by ascending power.
// Exact trailing zeros are trimmed on construction so degree() is the
// index of the last stored coefficient (-1 for the zero polynomial).
class ScalarPoly {
 public:
  ScalarPoly() = default;
  explicit ScalarPoly(std::vector<Complex> coeffs);

  // (z - roots[0]) ... (z - roots[n-1]) scaled by `leading`.
  static ScalarPoly from_roots(const std::vector<Complex>& roots,
                               Complex leading = Complex(1.0, 0.0));

  const std::vector<Complex>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Complex coeff(int k) const;
  Complex eval(Complex z) const;
  double coeff_scale() const;  // max_k |c_k|

  friend ScalarPoly operator*(const ScalarPoly& a, const ScalarPoly& b);
  friend ScalarPoly operator+(const ScalarPoly& a, const ScalarPoly& b);
  ScalarPoly scaled(Complex factor) const;

 private:
  std::vector<Complex> c_;
};

// Matrix-valued polynomial, coefficient m multiplies the m-th power of the
// (caller-defined) expansion variable. All coefficients share one dimension.
class MatrixPoly {
 public:
  MatrixPoly() = default;
  explicit MatrixPoly(std::vector<CMatrix> coeffs);

  Index dim() const { return c_.empty() ? 0 : c_.front().rows(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<CMatrix>& coeffs() const { return c_; }
  CMatrix coeff(int m) const;  // zero matrix beyond the stored range
  CMatrix eval(Complex u) const;
  // Coefficient m picks up factor^m; evaluates p(factor * u).
  MatrixPoly scaled_argument(Complex factor) const;

 private:
  std::vector<CMatrix> c_;
};

MatrixPoly mat_poly_product(const MatrixPoly& a, const MatrixPoly& b);

// All roots of p, counted with multiplicity, by the Durand-Kerner
// simultaneous iteration. Deterministic: fixed initial configuration on a
// circle enclosing all roots, sweeps until either the largest correction
// falls below step_tol * radius or every iterate has a backward-error
// residual |p(z)| <= 1e-13 * sum_k |c_k||z|^k. Multiple roots converge to
// a cluster that passes the residual test even though corrections stall.
std::vector<Complex> poly_roots(const ScalarPoly& p, double step_tol = 1e-13,
                                int max_iter = 1000);

// Lagrange cardinal polynomials through distinct nodes lambda_i.
// inverse_rows row j holds the coefficients of
//   f_j(z) = prod_{i != j} (z - lambda_i) / (lambda_j - lambda_i),
// which is the inverse of the Vandermonde matrix P_{ij} = lambda_j^i.
struct VandermondeSystem {
  std::vector<Complex> lambdas;
  CMatrix inverse_rows;
};

// Throws DegenerateSpectrum when two nodes are closer than
// 1e-6 * max_i |lambda_i|.
VandermondeSystem prony_inverse(const std::vector<Complex>& lambdas);

CMatrix vandermonde_matrix(const std::vector<Complex>& lambdas);

double min_pairwise_gap(const std::vector<Complex>& values);

// Determinant through a partial-pivoting LU factorization.
Complex lu_det(const CMatrix& a);
// log |det a|; -inf for a numerically singular factor. Avoids the
// overflow/underflow of the plain determinant at larger dimensions.
double lu_log_abs_det(const CMatrix& a);

CMatrix kron(const CMatrix& a, const CMatrix& b);

// Frobenius-norm residual of `diff` relative to `scale`; absolute when the
// scale itself vanishes.
double rel_residual(const CMatrix& diff, double scale);
double commutator_residual(const CMatrix& a, const CMatrix& b);

// Primitive N-th root of unity and its integer / half-integer powers.
// Half powers use the principal branch exp(i pi k / N); all identities in
// this library are built from the same branch so they close exactly.
Complex omega_root(int n);
Complex omega_int_pow(int n, long k);
Complex omega_half_pow(int n, long numerator);

// Integer power of a complex scalar by repeated multiplication (m >= 0).
Complex cpow_int(Complex z, int m);

// 64-bit linear congruential generator,
//   state <- 6364136223846793005 * state + 1442695040888963407  (mod 2^64),
// seeded directly with the given value. uniform01 advances once and maps
// the top 53 bits onto [0, 1). Fixed here so that seeded runs reproduce
// bit-identically everywhere.
class Lcg64 {
 public:
  explicit Lcg64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return state_;
  }
  double uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

}  // namespace tau2
