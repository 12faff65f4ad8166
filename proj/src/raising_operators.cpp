#include "tau2/raising_operators.hpp"

#include <algorithm>
#include <cmath>

namespace tau2 {

GammaSequence gamma_sequence(const CMatrix& h, const CMatrix& z1_inv, int n,
                             int jmax) {
  if (n < 2) throw InvalidN("gamma_sequence: need N >= 2");
  if (jmax < 0) throw InvalidParams("gamma_sequence: need jmax >= 0");
  if (h.rows() != z1_inv.rows() || h.cols() != z1_inv.cols())
    throw DimMismatch("gamma_sequence: operand dimensions differ");
  const Complex pref =
      Complex(1.0, 0.0) / (omega_int_pow(n, -1) - Complex(1.0, 0.0));
  GammaSequence gs;
  gs.N = n;
  gs.gamma.reserve(jmax + 1);
  gs.gamma.push_back(z1_inv);
  for (int j = 0; j < jmax; ++j)
    gs.gamma.push_back(pref * (h * gs.gamma[j] - gs.gamma[j] * h));
  return gs;
}

CMatrix gamma1_closed_form(const ModelParams& p, const ParafermionSet& pf) {
  p.validate();
  if (pf.N != p.N || pf.L != p.L)
    throw DimMismatch("gamma1_closed_form: parafermion set mismatch");
  const int n = p.N, l = p.L;
  const Index dim = state_dim(n, l);
  CMatrix g = CMatrix::Zero(dim, dim);
  for (int m = 1; m <= l; ++m) {
    Complex ab(1.0, 0.0);
    for (int q = 1; q <= 2 * m - 2; ++q) ab *= p.a_at(q) / p.b_at(q);
    g += omega_int_pow(n, m) * omega_half_pow(n, n - 1) * ab *
         (p.d_at(2 * m - 1) / p.b_at(2 * m - 1)) * pf.psi[2 * m - 1];
  }
  for (int m = 1; m <= l - 1; ++m) {
    Complex ab(1.0, 0.0);
    for (int q = 1; q <= 2 * m - 1; ++q) ab *= p.a_at(q) / p.b_at(q);
    g -= omega_int_pow(n, m) * ab * (p.c_at(2 * m) / p.b_at(2 * m)) *
         pf.psi[2 * m];
  }
  return (p.d_at(0) / p.b_at(0)) * g;
}

std::vector<double> truncation_residuals(const GammaSequence& gs,
                                         const SpectralData& sd, int jmax) {
  const int nl = sd.N * sd.L;
  if (static_cast<int>(gs.gamma.size()) < nl + jmax + 1)
    throw InvalidParams("truncation_residuals: gamma sequence too short");
  std::vector<double> out;
  out.reserve(jmax + 1);
  const Index dim = gs.gamma[0].rows();
  for (int j = 0; j <= jmax; ++j) {
    CMatrix acc = CMatrix::Zero(dim, dim);
    double scale = 0.0;
    for (int l = 0; l <= sd.L; ++l) {
      const CMatrix term = sd.s[l] * gs.gamma[sd.N * (sd.L - l) + j];
      scale = std::max(scale, term.norm());
      acc += term;
    }
    out.push_back(rel_residual(acc, scale));
  }
  return out;
}

CMatrix companion_matrix(const SpectralData& sd) {
  const int nl = sd.N * sd.L;
  CMatrix h = CMatrix::Zero(nl, nl);
  for (int i = 0; i + 1 < nl; ++i) h(i, i + 1) = Complex(1.0, 0.0);
  for (int m = 0; m <= sd.L - 1; ++m)
    h(nl - 1, m * sd.N) = -sd.s[sd.L - m] / sd.s[0];
  return h;
}

double companion_action_residual(const CMatrix& h, const GammaSequence& gs,
                                 const CMatrix& companion) {
  const int nl = static_cast<int>(companion.rows());
  if (static_cast<int>(gs.gamma.size()) < nl)
    throw InvalidParams("companion_action_residual: gamma sequence too short");
  const Complex pref = omega_int_pow(gs.N, -1) - Complex(1.0, 0.0);
  double worst = 0.0;
  for (int j = 0; j < nl; ++j) {
    CMatrix rhs = CMatrix::Zero(h.rows(), h.cols());
    double scale = 0.0;
    for (int k = 0; k < nl; ++k) {
      if (companion(j, k) == Complex(0.0, 0.0)) continue;
      const CMatrix term = pref * companion(j, k) * gs.gamma[k];
      scale = std::max(scale, term.norm());
      rhs += term;
    }
    const CMatrix lhs = h * gs.gamma[j] - gs.gamma[j] * h;
    scale = std::max(scale, lhs.norm());
    worst = std::max(worst, rel_residual(lhs - rhs, scale));
  }
  return worst;
}

ScalarPoly charpoly_interpolated(const CMatrix& m, double sample_radius) {
  if (m.rows() != m.cols())
    throw DimMismatch("charpoly_interpolated: matrix not square");
  if (!(sample_radius > 0.0))
    throw InvalidParams("charpoly_interpolated: radius must be positive");
  const int n = static_cast<int>(m.rows());
  const int pts = n + 1;
  const CMatrix id = CMatrix::Identity(n, n);

  // Sample det(rho w I - M) at the (n+1)-th roots of unity w. The samples
  // of z -> det(zI - M) on that circle determine coefficient k through one
  // inverse DFT divided by rho^k; unit-circle nodes keep the interpolation
  // perfectly conditioned.
  std::vector<Complex> v(pts);
  for (int i = 0; i < pts; ++i) {
    const Complex w = std::polar(1.0, 2.0 * kPi * i / pts);
    v[i] = lu_det(sample_radius * w * id - m);
  }
  std::vector<Complex> coef(pts);
  for (int k = 0; k < pts; ++k) {
    Complex b(0.0, 0.0);
    for (int i = 0; i < pts; ++i)
      b += v[i] * std::polar(1.0, -2.0 * kPi * i * k / pts);
    coef[k] = b / (static_cast<double>(pts) *
                   std::pow(sample_radius, static_cast<double>(k)));
  }
  return ScalarPoly(std::move(coef));
}

double charpoly_vanishing_residual(const ScalarPoly& cp,
                                   const std::vector<Complex>& lambdas) {
  double worst = 0.0;
  for (const Complex& lam : lambdas) {
    const double alam = std::abs(lam);
    double scale = 0.0;
    double power = 1.0;
    for (int k = 0; k <= cp.degree(); ++k) {
      scale += std::abs(cp.coeff(k)) * power;
      power *= alam;
    }
    const double v = std::abs(cp.eval(lam));
    worst = std::max(worst, scale > 0.0 ? v / scale : v);
  }
  return worst;
}

HattedGammas build_gamma_hat(const GammaSequence& gs,
                             const VandermondeSystem& vs, int n, int l) {
  const int nl = n * l;
  if (static_cast<int>(vs.lambdas.size()) != nl)
    throw DimMismatch("build_gamma_hat: node count != NL");
  if (static_cast<int>(gs.gamma.size()) < nl)
    throw InvalidParams("build_gamma_hat: gamma sequence too short");
  const Index dim = gs.gamma[0].rows();
  HattedGammas hg;
  hg.N = n;
  hg.L = l;
  hg.op.assign(nl, CMatrix::Zero(dim, dim));
  for (int i = 0; i < nl; ++i)
    for (int j = 0; j < nl; ++j)
      hg.op[i] += vs.inverse_rows(i, j) * gs.gamma[j];
  return hg;
}

double eigencommutator_residual(const CMatrix& h, const HattedGammas& hg,
                                const SpectralData& sd) {
  const Complex pref = omega_int_pow(sd.N, -1) - Complex(1.0, 0.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < hg.op.size(); ++i) {
    const CMatrix& g = hg.op[i];
    const CMatrix lhs = h * g - g * h;
    const CMatrix rhs = pref * sd.lambda[i] * g;
    const double scale =
        std::max({lhs.norm(), rhs.norm(), h.norm() * g.norm()});
    worst = std::max(worst, rel_residual(lhs - rhs, scale));
  }
  return worst;
}

double gamma_reconstruction_residual(const GammaSequence& gs,
                                     const HattedGammas& hg,
                                     const SpectralData& sd) {
  const int nl = sd.N * sd.L;
  const Index dim = gs.gamma[0].rows();
  double worst = 0.0;
  for (int j = 0; j < nl; ++j) {
    CMatrix acc = CMatrix::Zero(dim, dim);
    for (int i = 0; i < nl; ++i)
      acc += cpow_int(sd.lambda[i], j) * hg.op[i];
    worst = std::max(worst, rel_residual(acc - gs.gamma[j],
                                         gs.gamma[j].norm()));
  }
  return worst;
}

double intertwining_residual(const HattedGammas& hg, const MatrixPoly& tau,
                             const SpectralData& sd) {
  // Work in plain t: coefficient m of tau2 in t is omega^m tau_{2,m}.
  const int deg = tau.degree();
  std::vector<CMatrix> tc(deg + 1);
  for (int m = 0; m <= deg; ++m)
    tc[m] = omega_int_pow(sd.N, m) * tau.coeffs()[m];
  double tau_scale = 0.0;
  for (const CMatrix& c : tc) tau_scale = std::max(tau_scale, c.norm());

  double worst = 0.0;
  for (int l = 1; l <= sd.L; ++l)
    for (int q = 0; q < sd.N; ++q) {
      const CMatrix& g = hg.at(q, l);
      const Complex mu = sd.r[l - 1] * omega_int_pow(sd.N, q);
      const double scale = (1.0 + std::abs(mu)) * tau_scale * g.norm();
      for (int m = 0; m <= deg + 1; ++m) {
        CMatrix diff = CMatrix::Zero(g.rows(), g.cols());
        if (m <= deg) diff += tc[m] * g - g * tc[m];
        if (m >= 1)
          diff += -mu * (tc[m - 1] * g) +
                  mu * omega_int_pow(sd.N, 1) * (g * tc[m - 1]);
        worst = std::max(worst, rel_residual(diff, scale));
      }
    }
  return worst;
}

}  // namespace tau2
