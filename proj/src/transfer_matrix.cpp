#include "tau2/transfer_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tau2/clock_algebra.hpp"

namespace tau2 {

namespace {

Complex boundary_or(const std::vector<Complex>& arr, int l, Complex bval) {
  const int n = static_cast<int>(arr.size());
  if (l == -1 || l == n) return bval;
  if (l < -1 || l > n) throw InvalidParams("coupling index out of range");
  return arr[l];
}

int wrap(int x, int n) { return ((x % n) + n) % n; }

}  // namespace

Complex ModelParams::a_at(int l) const { return boundary_or(a, l, {0.0, 0.0}); }
Complex ModelParams::b_at(int l) const { return boundary_or(b, l, {1.0, 0.0}); }
Complex ModelParams::c_at(int l) const { return boundary_or(c, l, {0.0, 0.0}); }
Complex ModelParams::d_at(int l) const { return boundary_or(d, l, {0.0, 0.0}); }

void ModelParams::validate() const {
  if (N < 2) throw InvalidParams("model: need N >= 2");
  if (L < 1) throw InvalidParams("model: need L >= 1");
  const std::size_t want = static_cast<std::size_t>(2 * L);
  if (a.size() != want || b.size() != want || c.size() != want ||
      d.size() != want)
    throw InvalidParams("model: coupling arrays must have length 2L");
  for (std::size_t l = 0; l < want; ++l)
    if (b[l] == Complex(0.0, 0.0))
      throw InvalidParams("model: b coupling vanishes at position " +
                          std::to_string(l));
}

AffineWeight irf_weight(const ModelParams& p, int j, int sj, int sj1,
                        int sj1p, int sjp) {
  const int n = p.N;
  const int d1 = wrap(sj1 - sj1p, n);  // 0: kept, 1: lowered
  const int d0 = wrap(sj - sjp, n);
  if (d1 > 1 || d0 > 1) return {Complex(0.0, 0.0), Complex(0.0, 0.0)};
  const Complex ph = omega_int_pow(n, sj - sj1 + 1);
  const Complex om = omega_root(n);
  const int lo = 2 * j - 1, hi = 2 * j;
  if (d1 == 0 && d0 == 0)
    return {p.b_at(lo) * p.b_at(hi), -ph * p.c_at(lo) * p.c_at(hi)};
  if (d1 == 0 && d0 == 1)
    return {Complex(0.0, 0.0),
            -om * p.d_at(lo) * p.b_at(hi) + ph * p.a_at(lo) * p.c_at(hi)};
  if (d1 == 1 && d0 == 0)
    return {p.b_at(lo) * p.d_at(hi) - ph * p.c_at(lo) * p.a_at(hi),
            Complex(0.0, 0.0)};
  return {ph * p.a_at(lo) * p.a_at(hi), -om * p.d_at(lo) * p.d_at(hi)};
}

Tau2Build build_tau2_detailed(const ModelParams& p, int boundary_spin) {
  p.validate();
  const int n = p.N, l = p.L;
  if (boundary_spin < 0 || boundary_spin >= n)
    throw InvalidParams("build_tau2: boundary spin outside 0..N-1");
  const Index dim = state_dim(n, l);

  std::vector<CMatrix> coef(l + 2, CMatrix::Zero(dim, dim));
  std::vector<int> su(l + 2), sp(l + 2);
  su[0] = sp[0] = su[l + 1] = sp[l + 1] = boundary_spin;

  std::vector<Complex> poly, next;
  poly.reserve(l + 2);
  next.reserve(l + 2);
  for (Index row = 0; row < dim; ++row) {
    Index rr = row;
    for (int j = l; j >= 1; --j) {
      su[j] = static_cast<int>(rr % n);
      rr /= n;
    }
    for (Index col = 0; col < dim; ++col) {
      Index cc = col;
      for (int j = l; j >= 1; --j) {
        sp[j] = static_cast<int>(cc % n);
        cc /= n;
      }
      poly.assign(1, Complex(1.0, 0.0));
      bool dead = false;
      for (int j = 0; j <= l && !dead; ++j) {
        const AffineWeight w =
            irf_weight(p, j, su[j], su[j + 1], sp[j + 1], sp[j]);
        if (w.constant == Complex(0.0, 0.0) && w.linear == Complex(0.0, 0.0)) {
          dead = true;
          break;
        }
        next.assign(poly.size() + 1, Complex(0.0, 0.0));
        for (std::size_t m = 0; m < poly.size(); ++m) {
          next[m] += poly[m] * w.constant;
          next[m + 1] += poly[m] * w.linear;
        }
        poly.swap(next);
      }
      if (dead) continue;
      // Convert t powers to (omega t) powers.
      for (std::size_t m = 0; m < poly.size() && m < coef.size(); ++m)
        coef[m](row, col) = poly[m] * omega_int_pow(n, -static_cast<long>(m));
    }
  }

  Tau2Build out;
  const double a0mod = std::abs(a0_constant(p));
  out.overflow = rel_residual(coef[l + 1], a0mod);
  coef.pop_back();
  out.poly = MatrixPoly(std::move(coef));
  return out;
}

MatrixPoly build_tau2(const ModelParams& p, int boundary_spin) {
  return build_tau2_detailed(p, boundary_spin).poly;
}

Complex a0_constant(const ModelParams& p) {
  Complex a0(1.0, 0.0);
  for (const Complex& v : p.b) a0 *= v;
  return a0;
}

FunctionalProduct functional_product(const MatrixPoly& tau, int n,
                                     double tol) {
  if (n < 2) throw InvalidN("functional_product: need N >= 2");
  if (tau.degree() < 0)
    throw InvalidParams("functional_product: empty polynomial");
  MatrixPoly prod = tau;
  for (int k = 1; k < n; ++k)
    prod = mat_poly_product(prod, tau.scaled_argument(omega_int_pow(n, k)));

  const Index dim = tau.dim();
  double max_norm = 0.0;
  for (const CMatrix& c : prod.coeffs()) max_norm = std::max(max_norm, c.norm());

  FunctionalProduct out;
  const CMatrix id = CMatrix::Identity(dim, dim);
  std::vector<Complex> fc;
  for (int m = 0; m <= prod.degree(); ++m) {
    const CMatrix& c = prod.coeffs()[m];
    const Complex scalar = c.trace() / static_cast<double>(dim);
    out.off_identity =
        std::max(out.off_identity, rel_residual(c - scalar * id, max_norm));
    if (m % n != 0) {
      out.off_period = std::max(out.off_period, rel_residual(c, max_norm));
    } else {
      // Coefficient of x^{m/N} once (omega t)^m = omega^m t^m is folded in;
      // omega^m = 1 on this sublattice.
      fc.push_back(scalar);
    }
  }
  out.f = ScalarPoly(std::move(fc));
  if (out.off_identity > tol)
    throw NotScalar("functional_product: off-identity residual " +
                    std::to_string(out.off_identity));
  if (out.off_period > tol)
    throw NotPeriodic("functional_product: off-period residual " +
                      std::to_string(out.off_period));
  return out;
}

SpectralData spectral_roots(const ScalarPoly& f, Complex a0, int n, int l) {
  if (n < 2) throw InvalidN("spectral_roots: need N >= 2");
  if (l < 1) throw InvalidParams("spectral_roots: need L >= 1");
  if (f.degree() != l)
    throw InvalidParams("spectral_roots: polynomial degree != L");

  const std::vector<Complex> xs = poly_roots(f);
  double max_mod = 0.0;
  for (const Complex& x : xs) max_mod = std::max(max_mod, std::abs(x));
  for (const Complex& x : xs)
    if (std::abs(x) < 1e-12 * (1.0 + max_mod))
      throw ZeroRoot("spectral_roots: root of f at the origin");

  SpectralData sd;
  sd.N = n;
  sd.L = l;
  sd.A0 = a0;
  sd.r.reserve(l);
  for (const Complex& x : xs) {
    const Complex rn = Complex(1.0, 0.0) / x;
    double arg = std::arg(rn);
    if (arg < 0.0) arg += 2.0 * kPi;
    sd.r.push_back(std::polar(std::pow(std::abs(rn), 1.0 / n), arg / n));
  }
  std::sort(sd.r.begin(), sd.r.end(), [](const Complex& u, const Complex& v) {
    const double au = std::abs(u), av = std::abs(v);
    if (au != av) return au > av;
    return std::arg(u) < std::arg(v);
  });

  const Complex f0 = f.coeff(0);
  if (std::abs(f0) == 0.0)
    throw ZeroRoot("spectral_roots: constant coefficient vanishes");
  sd.s.resize(l + 1);
  for (int k = 0; k <= l; ++k) sd.s[k] = f.coeff(k) / f0;

  sd.lambda.resize(static_cast<std::size_t>(n) * l);
  for (int k = 1; k <= l; ++k)
    for (int p = 0; p < n; ++p)
      sd.lambda[(k - 1) * n + p] = sd.r[k - 1] * omega_int_pow(n, p);

  double lmax = 0.0;
  for (const Complex& v : sd.lambda) lmax = std::max(lmax, std::abs(v));
  if (min_pairwise_gap(sd.lambda) <= 1e-6 * lmax)
    throw DegenerateSpectrum("spectral_roots: lambda grid nearly degenerate");
  return sd;
}

double root_relation_residual(const SpectralData& sd) {
  double worst = 0.0;
  for (const Complex& rk : sd.r) {
    Complex num(0.0, 0.0);
    double den = 0.0;
    for (int l = 0; l <= sd.L; ++l) {
      const Complex term = cpow_int(rk, sd.N * (sd.L - l));
      num += sd.s[l] * term;
      den += std::abs(sd.s[l]) * std::abs(term);
    }
    worst = std::max(worst, den > 0.0 ? std::abs(num) / den : std::abs(num));
  }
  return worst;
}

double spectrum_gap_ratio(const SpectralData& sd) {
  double lmax = 0.0;
  for (const Complex& v : sd.lambda) lmax = std::max(lmax, std::abs(v));
  const double gap = min_pairwise_gap(sd.lambda);
  if (gap == 0.0) return std::numeric_limits<double>::infinity();
  return 1e-6 * lmax / gap;
}

double commuting_family_residual(const MatrixPoly& tau) {
  double worst = 0.0;
  for (int m = 0; m <= tau.degree(); ++m)
    for (int k = m + 1; k <= tau.degree(); ++k)
      worst = std::max(worst,
                       commutator_residual(tau.coeffs()[m], tau.coeffs()[k]));
  return worst;
}

}  // namespace tau2
