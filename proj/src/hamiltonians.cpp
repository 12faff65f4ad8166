#include "tau2/hamiltonians.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tau2 {

namespace {

// prod_{l=lo}^{hi} a_l / b_l, empty product = 1.
Complex ab_ratio(const ModelParams& p, int lo, int hi) {
  Complex v(1.0, 0.0);
  for (int l = lo; l <= hi; ++l) v *= p.a_at(l) / p.b_at(l);
  return v;
}

}  // namespace

CMatrix build_H_explicit(const ModelParams& p) {
  p.validate();
  const int n = p.N, l = p.L;
  const ClockSite site = build_site_ops(n);
  const Index dim = state_dim(n, l);

  std::vector<CMatrix> xe(l + 1), ze(l + 1), ye(l + 1), zinv(l + 1), yinv(l + 1);
  for (int j = 1; j <= l; ++j) {
    xe[j] = embed(site.X, j, l);
    ze[j] = embed(site.Z, j, l);
    ye[j] = embed(site.Y, j, l);
    zinv[j] = embed(site.Z.adjoint(), j, l);
    yinv[j] = embed(site.Y.adjoint(), j, l);
  }
  auto xrun = [&](int from, int to) {  // X_from ... X_to, empty = identity
    CMatrix v = CMatrix::Identity(dim, dim);
    for (int j = from; j <= to; ++j) v *= xe[j];
    return v;
  };

  CMatrix h = CMatrix::Zero(dim, dim);
  for (int j = 1; j <= l; ++j)
    for (int k = j; k <= l; ++k) {
      const Complex coef = omega_int_pow(n, k - j) * omega_half_pow(n, n - 1) *
                           (p.d_at(2 * j - 2) / p.b_at(2 * j - 2)) *
                           ab_ratio(p, 2 * j - 1, 2 * k - 2) *
                           (p.d_at(2 * k - 1) / p.b_at(2 * k - 1));
      h -= coef * (ze[j] * xrun(j, k - 1) * yinv[k]);
    }
  for (int j = 1; j <= l - 1; ++j)
    for (int k = j + 1; k <= l; ++k) {
      const Complex coef = omega_int_pow(n, k - j - 1) *
                           (p.c_at(2 * j - 1) / p.b_at(2 * j - 1)) *
                           ab_ratio(p, 2 * j, 2 * k - 2) *
                           (p.d_at(2 * k - 1) / p.b_at(2 * k - 1));
      h += coef * (ye[j] * xrun(j, k - 1) * yinv[k]);
    }
  for (int j = 1; j <= l - 1; ++j)
    for (int k = j; k <= l - 1; ++k) {
      const Complex coef = omega_int_pow(n, k - j) *
                           omega_half_pow(n, -(n + 1)) *
                           (p.c_at(2 * j - 1) / p.b_at(2 * j - 1)) *
                           ab_ratio(p, 2 * j, 2 * k - 1) *
                           (p.c_at(2 * k) / p.b_at(2 * k));
      h -= coef * (ye[j] * xrun(j, k) * zinv[k + 1]);
    }
  for (int j = 1; j <= l - 1; ++j)
    for (int k = j; k <= l - 1; ++k) {
      const Complex coef = omega_int_pow(n, k - j) *
                           (p.d_at(2 * j - 2) / p.b_at(2 * j - 2)) *
                           ab_ratio(p, 2 * j - 1, 2 * k - 1) *
                           (p.c_at(2 * k) / p.b_at(2 * k));
      h += coef * (ze[j] * xrun(j, k) * zinv[k + 1]);
    }
  return h;
}

CMatrix build_H_parafermion(const ModelParams& p, const ParafermionSet& pf) {
  p.validate();
  if (pf.N != p.N || pf.L != p.L)
    throw DimMismatch("build_H_parafermion: parafermion set does not match model");
  const int n = p.N, l = p.L;
  const Index dim = state_dim(n, l);
  auto psi = [&](int idx) -> const CMatrix& { return pf.psi[idx]; };
  auto psi_inv = [&](int idx) { return CMatrix(pf.psi[idx].adjoint()); };

  CMatrix h = CMatrix::Zero(dim, dim);
  for (int j = 1; j <= l; ++j)
    for (int m = j; m <= l; ++m) {
      const Complex coef = omega_int_pow(n, m - j) * omega_half_pow(n, n - 1) *
                           ab_ratio(p, 2 * j - 1, 2 * m - 2) *
                           (p.d_at(2 * j - 2) * p.d_at(2 * m - 1)) /
                           (p.b_at(2 * j - 2) * p.b_at(2 * m - 1));
      h -= coef * (psi_inv(2 * j - 2) * psi(2 * m - 1));
    }
  for (int j = 1; j <= l - 1; ++j)
    for (int m = j; m <= l - 1; ++m) {
      const Complex base = omega_int_pow(n, m - j);
      h -= base * omega_half_pow(n, -(n + 1)) * ab_ratio(p, 2 * j, 2 * m - 1) *
           (p.c_at(2 * j - 1) * p.c_at(2 * m)) /
           (p.b_at(2 * j - 1) * p.b_at(2 * m)) *
           (psi_inv(2 * j - 1) * psi(2 * m));
      h += base * ab_ratio(p, 2 * j - 1, 2 * m - 1) *
           (p.d_at(2 * j - 2) * p.c_at(2 * m)) /
           (p.b_at(2 * j - 2) * p.b_at(2 * m)) *
           (psi_inv(2 * j - 2) * psi(2 * m));
      h += base * ab_ratio(p, 2 * j, 2 * m) *
           (p.c_at(2 * j - 1) * p.d_at(2 * m + 1)) /
           (p.b_at(2 * j - 1) * p.b_at(2 * m + 1)) *
           (psi_inv(2 * j - 1) * psi(2 * m + 1));
    }
  return h;
}

ModelParams clock_limit(int n, const ClockParams& cp) {
  const int l = static_cast<int>(cp.alpha.size());
  if (l < 1) throw InvalidParams("clock_limit: need at least one alpha");
  if (cp.gamma.size() + 1 != cp.alpha.size())
    throw InvalidParams("clock_limit: need L-1 gamma couplings");
  ModelParams p;
  p.N = n;
  p.L = l;
  p.a.assign(2 * l, Complex(0.0, 0.0));
  p.b.assign(2 * l, Complex(1.0, 0.0));
  p.c.assign(2 * l, Complex(0.0, 0.0));
  p.d.assign(2 * l, Complex(0.0, 0.0));
  for (int j = 1; j <= l; ++j) {
    p.d[2 * j - 2] = cp.alpha[j - 1];
    p.d[2 * j - 1] = Complex(1.0, 0.0);
  }
  for (int j = 1; j <= l - 1; ++j) {
    p.c[2 * j - 1] = cp.gamma[j - 1];
    p.c[2 * j] = Complex(1.0, 0.0);
  }
  p.validate();
  return p;
}

CMatrix build_clock_hamiltonian(int n, const ClockParams& cp) {
  const int l = static_cast<int>(cp.alpha.size());
  if (l < 1) throw InvalidParams("build_clock_hamiltonian: empty alpha");
  if (cp.gamma.size() + 1 != cp.alpha.size())
    throw InvalidParams("build_clock_hamiltonian: need L-1 gamma couplings");
  const ClockSite site = build_site_ops(n);
  const Index dim = state_dim(n, l);
  CMatrix h = CMatrix::Zero(dim, dim);
  for (int j = 1; j <= l; ++j) h -= cp.alpha[j - 1] * embed(site.X, j, l);
  for (int j = 1; j <= l - 1; ++j)
    h -= cp.gamma[j - 1] *
         (embed(site.Z, j, l) * embed(site.Z.adjoint(), j + 1, l));
  return h;
}

HamiltonianTower higher_hamiltonians(const MatrixPoly& tau, int l, int m_max,
                                     bool right_multiply) {
  if (tau.degree() < 0) throw InvalidParams("higher_hamiltonians: empty tau");
  if (m_max < 0) throw InvalidParams("higher_hamiltonians: need m_max >= 0");
  const Index dim = tau.dim();
  const Complex a0 = tau.coeffs()[0].trace() / static_cast<double>(dim);
  if (std::abs(a0) < 1e-280)
    throw SingularLeading("higher_hamiltonians: constant term too small");

  std::vector<CMatrix> g(m_max + 1, CMatrix::Zero(dim, dim));
  for (int m = 0; m <= m_max && m <= tau.degree(); ++m)
    g[m] = tau.coeffs()[m] / a0;

  HamiltonianTower tower;
  tower.L = l;
  tower.H.resize(m_max + 1);
  tower.H[0] = -static_cast<double>(l) * CMatrix::Identity(dim, dim);
  for (int m = 1; m <= m_max; ++m) {
    CMatrix h = static_cast<double>(m) * g[m];
    for (int j = 1; j < m; ++j)
      h -= right_multiply ? CMatrix(tower.H[j] * g[m - j])
                          : CMatrix(g[m - j] * tower.H[j]);
    tower.H[m] = std::move(h);
  }
  return tower;
}

Complex predicted_eigenvalue(const SpectralData& sd, const std::vector<int>& n,
                             int m) {
  if (static_cast<int>(n.size()) != sd.L)
    throw DimMismatch("predicted_eigenvalue: tuple length != L");
  Complex sum(0.0, 0.0);
  for (int k = 0; k < sd.L; ++k)
    sum += cpow_int(sd.r[k] * omega_int_pow(sd.N, n[k]), m);
  return -sum;
}

double tower_exp_residual(const MatrixPoly& tau, const HamiltonianTower& tower) {
  const Index dim = tau.dim();
  const int l = tau.degree();
  const Complex a0 = tau.coeffs()[0].trace() / static_cast<double>(dim);

  // S = sum_m u^m H^{(m)} / m truncated at degree L, then exp(S) as a
  // series in u; S has no constant term so L powers suffice.
  std::vector<CMatrix> s(l + 1, CMatrix::Zero(dim, dim));
  for (int m = 1; m <= l && m < static_cast<int>(tower.H.size()); ++m)
    s[m] = tower.H[m] / static_cast<double>(m);
  MatrixPoly sp{std::vector<CMatrix>(s)};

  std::vector<CMatrix> acc(l + 1, CMatrix::Zero(dim, dim));
  acc[0] = CMatrix::Identity(dim, dim);
  MatrixPoly expp{std::vector<CMatrix>(acc)};  // running exp partial sum
  MatrixPoly term{std::vector<CMatrix>{CMatrix::Identity(dim, dim)}};
  double fact = 1.0;
  for (int k = 1; k <= l; ++k) {
    term = mat_poly_product(term, sp);
    // Truncate to degree L before accumulating.
    std::vector<CMatrix> tc(term.coeffs().begin(),
                            term.coeffs().begin() +
                                std::min<std::size_t>(term.coeffs().size(),
                                                      l + 1));
    term = MatrixPoly(std::move(tc));
    fact *= k;
    std::vector<CMatrix> ec(l + 1, CMatrix::Zero(dim, dim));
    for (int m = 0; m <= l; ++m)
      ec[m] = expp.coeff(m) + term.coeff(m) / fact;
    expp = MatrixPoly(std::move(ec));
  }

  double worst = 0.0;
  for (int m = 0; m <= l; ++m) {
    const CMatrix want = tau.coeffs()[m];
    worst = std::max(worst,
                     rel_residual(a0 * expp.coeff(m) - want,
                                  std::max(want.norm(), std::abs(a0))));
  }
  return worst;
}

double tower_commutativity_residual(const HamiltonianTower& tower) {
  double worst = 0.0;
  for (std::size_t m = 1; m < tower.H.size(); ++m)
    for (std::size_t k = m + 1; k < tower.H.size(); ++k)
      worst = std::max(worst, commutator_residual(tower.H[m], tower.H[k]));
  return worst;
}

double eigenvalue_membership_residual(const CMatrix& h,
                                      const SpectralData& sd) {
  const Index dim = h.rows();
  const double scale = h.norm();
  double worst = 0.0;
  std::vector<int> tuple(sd.L, 0);
  const Index total = state_dim(sd.N, sd.L);
  if (total != dim)
    throw DimMismatch("eigenvalue_membership_residual: dimension mismatch");
  for (Index idx = 0; idx < total; ++idx) {
    Index v = idx;
    for (int k = sd.L - 1; k >= 0; --k) {
      tuple[k] = static_cast<int>(v % sd.N);
      v /= sd.N;
    }
    const Complex e = predicted_eigenvalue(sd, tuple, 1);
    const CMatrix shifted = h - e * CMatrix::Identity(dim, dim);
    Eigen::JacobiSVD<CMatrix> svd(shifted);
    worst = std::max(worst, svd.singularValues().minCoeff() / scale);
  }
  return worst;
}

}  // namespace tau2
