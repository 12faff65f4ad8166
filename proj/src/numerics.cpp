#include "tau2/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tau2 {

namespace {
constexpr double kTiny = 1e-300;
}

ScalarPoly::ScalarPoly(std::vector<Complex> coeffs) : c_(std::move(coeffs)) {
  while (!c_.empty() && c_.back() == Complex(0.0, 0.0)) c_.pop_back();
}

ScalarPoly ScalarPoly::from_roots(const std::vector<Complex>& roots,
                                  Complex leading) {
  std::vector<Complex> c{leading};
  for (Complex r : roots) {
    c.push_back(Complex(0.0, 0.0));
    for (std::size_t k = c.size() - 1; k >= 1; --k)
      c[k] = c[k - 1] - r * c[k];
    c[0] *= -r;
  }
  return ScalarPoly(std::move(c));
}

Complex ScalarPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return Complex(0.0, 0.0);
  return c_[k];
}

Complex ScalarPoly::eval(Complex z) const {
  Complex v(0.0, 0.0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * z + *it;
  return v;
}

double ScalarPoly::coeff_scale() const {
  double s = 0.0;
  for (const Complex& x : c_) s = std::max(s, std::abs(x));
  return s;
}

ScalarPoly operator*(const ScalarPoly& a, const ScalarPoly& b) {
  if (a.is_zero() || b.is_zero()) return ScalarPoly();
  std::vector<Complex> c(a.c_.size() + b.c_.size() - 1, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return ScalarPoly(std::move(c));
}

ScalarPoly operator+(const ScalarPoly& a, const ScalarPoly& b) {
  std::vector<Complex> c(std::max(a.c_.size(), b.c_.size()), Complex(0.0, 0.0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return ScalarPoly(std::move(c));
}

ScalarPoly ScalarPoly::scaled(Complex factor) const {
  std::vector<Complex> c = c_;
  for (Complex& x : c) x *= factor;
  return ScalarPoly(std::move(c));
}

MatrixPoly::MatrixPoly(std::vector<CMatrix> coeffs) : c_(std::move(coeffs)) {
  for (std::size_t i = 1; i < c_.size(); ++i) {
    if (c_[i].rows() != c_[0].rows() || c_[i].cols() != c_[0].cols())
      throw DimMismatch("MatrixPoly: coefficient dimensions differ");
  }
}

CMatrix MatrixPoly::coeff(int m) const {
  if (m < 0 || m >= static_cast<int>(c_.size()))
    return CMatrix::Zero(dim(), dim());
  return c_[m];
}

CMatrix MatrixPoly::eval(Complex u) const {
  if (c_.empty()) return CMatrix();
  CMatrix v = CMatrix::Zero(dim(), dim());
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = u * v + *it;
  return v;
}

MatrixPoly MatrixPoly::scaled_argument(Complex factor) const {
  std::vector<CMatrix> c = c_;
  Complex f(1.0, 0.0);
  for (std::size_t m = 0; m < c.size(); ++m) {
    c[m] *= f;
    f *= factor;
  }
  return MatrixPoly(std::move(c));
}

MatrixPoly mat_poly_product(const MatrixPoly& a, const MatrixPoly& b) {
  if (a.dim() != b.dim())
    throw DimMismatch("mat_poly_product: operand dimensions differ");
  if (a.degree() < 0 || b.degree() < 0) return MatrixPoly();
  std::vector<CMatrix> c(a.degree() + b.degree() + 1,
                         CMatrix::Zero(a.dim(), a.dim()));
  for (int i = 0; i <= a.degree(); ++i)
    for (int j = 0; j <= b.degree(); ++j)
      c[i + j] += a.coeffs()[i] * b.coeffs()[j];
  return MatrixPoly(std::move(c));
}

std::vector<Complex> poly_roots(const ScalarPoly& p, double step_tol,
                                int max_iter) {
  if (p.is_zero()) throw ZeroPolynomial("poly_roots: zero polynomial");
  const int n = p.degree();
  if (n < 1) return {};

  // Monic scaling; the root bound R = 1 + max_k |c_k / c_n| encloses all
  // roots (Cauchy bound).
  const Complex lead = p.coeffs()[n];
  std::vector<Complex> mc(n + 1);
  for (int k = 0; k <= n; ++k) mc[k] = p.coeffs()[k] / lead;
  double radius = 0.0;
  for (int k = 0; k < n; ++k) radius = std::max(radius, std::abs(mc[k]));
  radius += 1.0;

  std::vector<Complex> z(n);
  for (int i = 0; i < n; ++i)
    z[i] = std::polar(radius, 2.0 * kPi * i / n + 0.5);

  for (int iter = 0; iter < max_iter; ++iter) {
    double max_step = 0.0;
    bool residuals_ok = true;
    for (int i = 0; i < n; ++i) {
      const double az = std::abs(z[i]);
      Complex pv(0.0, 0.0);
      double bound = 0.0;
      for (int k = n; k >= 0; --k) {
        pv = pv * z[i] + mc[k];
        bound = bound * az + std::abs(mc[k]);
      }
      if (std::abs(pv) > 1e-13 * std::max(bound, kTiny)) residuals_ok = false;
      Complex den(1.0, 0.0);
      for (int j = 0; j < n; ++j)
        if (j != i) den *= z[i] - z[j];
      if (den == Complex(0.0, 0.0)) {
        // Collided iterates; nudge apart and retry on the next sweep.
        z[i] += Complex(1e-12 * radius, 1e-12 * radius);
        max_step = radius;
        residuals_ok = false;
        continue;
      }
      const Complex step = pv / den;
      z[i] -= step;
      max_step = std::max(max_step, std::abs(step));
    }
    if (residuals_ok || max_step <= step_tol * radius) return z;
  }
  throw NonConvergence("poly_roots: Durand-Kerner did not converge");
}

double min_pairwise_gap(const std::vector<Complex>& values) {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      g = std::min(g, std::abs(values[i] - values[j]));
  return g;
}

VandermondeSystem prony_inverse(const std::vector<Complex>& lambdas) {
  const int n = static_cast<int>(lambdas.size());
  if (n == 0) throw InvalidParams("prony_inverse: empty node set");
  double max_mod = 0.0;
  for (const Complex& l : lambdas) max_mod = std::max(max_mod, std::abs(l));
  const double gap_min = 1e-6 * max_mod;
  if (n > 1 && min_pairwise_gap(lambdas) <= gap_min)
    throw DegenerateSpectrum("prony_inverse: nodes closer than 1e-6 * max|lambda|");

  VandermondeSystem vs;
  vs.lambdas = lambdas;
  vs.inverse_rows = CMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    std::vector<Complex> num{Complex(1.0, 0.0)};
    Complex den(1.0, 0.0);
    for (int i = 0; i < n; ++i) {
      if (i == j) continue;
      num.push_back(Complex(0.0, 0.0));
      for (std::size_t k = num.size() - 1; k >= 1; --k)
        num[k] = num[k - 1] - lambdas[i] * num[k];
      num[0] *= -lambdas[i];
      den *= lambdas[j] - lambdas[i];
    }
    for (int k = 0; k < n; ++k) vs.inverse_rows(j, k) = num[k] / den;
  }
  return vs;
}

CMatrix vandermonde_matrix(const std::vector<Complex>& lambdas) {
  const int n = static_cast<int>(lambdas.size());
  CMatrix p(n, n);
  for (int j = 0; j < n; ++j) {
    Complex v(1.0, 0.0);
    for (int i = 0; i < n; ++i) {
      p(i, j) = v;
      v *= lambdas[j];
    }
  }
  return p;
}

Complex lu_det(const CMatrix& a) {
  if (a.rows() != a.cols()) throw DimMismatch("lu_det: matrix not square");
  if (a.rows() == 0) return Complex(1.0, 0.0);
  return Eigen::PartialPivLU<CMatrix>(a).determinant();
}

double lu_log_abs_det(const CMatrix& a) {
  if (a.rows() != a.cols()) throw DimMismatch("lu_log_abs_det: matrix not square");
  if (a.rows() == 0) return 0.0;
  Eigen::PartialPivLU<CMatrix> lu(a);
  double s = 0.0;
  for (Index i = 0; i < a.rows(); ++i) {
    const double d = std::abs(lu.matrixLU()(i, i));
    if (d == 0.0) return -std::numeric_limits<double>::infinity();
    s += std::log(d);
  }
  return s;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double rel_residual(const CMatrix& diff, double scale) {
  const double d = diff.norm();
  return scale > kTiny ? d / scale : d;
}

double commutator_residual(const CMatrix& a, const CMatrix& b) {
  return rel_residual(a * b - b * a, a.norm() * b.norm());
}

Complex omega_root(int n) {
  if (n < 2) throw InvalidN("omega_root: need N >= 2");
  return std::polar(1.0, 2.0 * kPi / n);
}

Complex omega_int_pow(int n, long k) {
  if (n < 2) throw InvalidN("omega_int_pow: need N >= 2");
  long r = k % n;
  if (r < 0) r += n;
  return std::polar(1.0, 2.0 * kPi * static_cast<double>(r) / n);
}

Complex omega_half_pow(int n, long numerator) {
  if (n < 2) throw InvalidN("omega_half_pow: need N >= 2");
  return std::polar(1.0, kPi * static_cast<double>(numerator) / n);
}

Complex cpow_int(Complex z, int m) {
  Complex v(1.0, 0.0);
  for (int i = 0; i < m; ++i) v *= z;
  return v;
}

}  // namespace tau2
