#include "tau2/projector_engine.hpp"

#include <algorithm>
#include <cmath>

namespace tau2 {

ProjectorFamily build_projectors(const HamiltonianTower& tower,
                                 const VandermondeSystem& vs,
                                 const SpectralData& sd) {
  const int nl = sd.N * sd.L;
  if (static_cast<int>(vs.lambdas.size()) != nl)
    throw DimMismatch("build_projectors: node count != NL");
  if (static_cast<int>(tower.H.size()) < nl)
    throw InvalidParams("build_projectors: tower shorter than NL");
  const Index dim = tower.H[0].rows();

  ProjectorFamily pf;
  pf.N = sd.N;
  pf.L = sd.L;
  pf.P.assign(nl, CMatrix::Zero(dim, dim));
  for (int i = 0; i < nl; ++i)
    for (int m = 0; m < nl; ++m)
      pf.P[i] -= vs.inverse_rows(i, m) * tower.H[m];

  pf.u.assign(sd.L, CMatrix::Zero(dim, dim));
  for (int k = 1; k <= sd.L; ++k)
    for (int p = 0; p < sd.N; ++p)
      pf.u[k - 1] += sd.r[k - 1] * omega_int_pow(sd.N, p) * pf.at(p, k);
  return pf;
}

ProjectorAxioms projector_axioms(const ProjectorFamily& pf) {
  ProjectorAxioms ax;
  const int n = pf.N, l = pf.L;
  const Index dim = pf.P[0].rows();
  const CMatrix id = CMatrix::Identity(dim, dim);
  for (int k = 1; k <= l; ++k) {
    CMatrix sum = CMatrix::Zero(dim, dim);
    for (int p = 0; p < n; ++p) {
      const CMatrix& pp = pf.at(p, k);
      sum += pp;
      ax.idempotency = std::max(
          ax.idempotency, rel_residual(pp * pp - pp, pp.norm()));
      for (int q = 0; q < n; ++q) {
        if (q == p) continue;
        const CMatrix& pq = pf.at(q, k);
        ax.orthogonality = std::max(
            ax.orthogonality, rel_residual(pp * pq, pp.norm() * pq.norm()));
      }
    }
    ax.completeness =
        std::max(ax.completeness, rel_residual(sum - id, id.norm()));
  }
  for (std::size_t i = 0; i < pf.P.size(); ++i)
    for (std::size_t j = i + 1; j < pf.P.size(); ++j)
      ax.commutation =
          std::max(ax.commutation, commutator_residual(pf.P[i], pf.P[j]));
  return ax;
}

double projector_trace_residual(const ProjectorFamily& pf) {
  const double want = std::pow(static_cast<double>(pf.N), pf.L - 1);
  double worst = 0.0;
  for (const CMatrix& p : pf.P)
    worst = std::max(worst, std::abs(p.trace() - Complex(want, 0.0)) / want);
  return worst;
}

double projector_tower_commutation(const ProjectorFamily& pf,
                                   const HamiltonianTower& tower) {
  const int nl = pf.N * pf.L;
  double worst = 0.0;
  for (const CMatrix& p : pf.P)
    for (int m = 0; m < nl && m < static_cast<int>(tower.H.size()); ++m)
      worst = std::max(worst, commutator_residual(p, tower.H[m]));
  return worst;
}

std::vector<double> hamiltonian_reconstruction_residuals(
    const ProjectorFamily& pf, const SpectralData& sd,
    const HamiltonianTower& tower, int m_max) {
  if (m_max >= static_cast<int>(tower.H.size()))
    throw InvalidParams("hamiltonian_reconstruction: tower too short");
  const Index dim = pf.P[0].rows();
  std::vector<double> out;
  out.reserve(m_max + 1);
  for (int m = 0; m <= m_max; ++m) {
    CMatrix acc = CMatrix::Zero(dim, dim);
    for (int k = 1; k <= sd.L; ++k)
      for (int p = 0; p < sd.N; ++p)
        acc -= cpow_int(sd.r[k - 1] * omega_int_pow(sd.N, p), m) * pf.at(p, k);
    out.push_back(rel_residual(acc - tower.H[m],
                               std::max(acc.norm(), tower.H[m].norm())));
  }
  return out;
}

double tau_reconstruction_residual(const ProjectorFamily& pf,
                                   const MatrixPoly& tau,
                                   const SpectralData& sd) {
  const Index dim = tau.dim();
  // Expand A0 prod_k (1 - u u_k) in u = omega t.
  MatrixPoly acc{std::vector<CMatrix>{CMatrix::Identity(dim, dim)}};
  for (int k = 1; k <= sd.L; ++k) {
    MatrixPoly factor{
        std::vector<CMatrix>{CMatrix::Identity(dim, dim), -pf.u[k - 1]}};
    acc = mat_poly_product(acc, factor);
  }
  double worst = 0.0;
  for (int m = 0; m <= std::max(acc.degree(), tau.degree()); ++m) {
    const CMatrix want = tau.coeff(m);
    const CMatrix got = sd.A0 * acc.coeff(m);
    worst = std::max(
        worst, rel_residual(got - want, std::max(want.norm(), got.norm())));
  }
  return worst;
}

double projector_raising_residual(const ProjectorFamily& pf,
                                  const HattedGammas& hg) {
  const int n = pf.N, l = pf.L;
  double worst = 0.0;
  for (int k = 1; k <= l; ++k)
    for (int p = 0; p < n; ++p)
      for (int ll = 1; ll <= l; ++ll)
        for (int q = 0; q < n; ++q) {
          const CMatrix& proj = pf.at(p, k);
          const CMatrix& g = hg.at(q, ll);
          CMatrix want = CMatrix::Zero(g.rows(), g.cols());
          if (k == ll) {
            const int qm1 = ((q - 1) % n + n) % n;
            if (p == q) want += g;
            if (p == qm1) want -= g;
          }
          worst = std::max(
              worst, rel_residual(proj * g - g * proj - want, g.norm()));
        }
  return worst;
}

}  // namespace tau2
