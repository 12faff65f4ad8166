#pragma once

#include <vector>

#include "tau2/hamiltonians.hpp"
#include "tau2/raising_operators.hpp"

namespace tau2 {

// Spectral projectors built from the tower,
//   P_{p,k} = -sum_{m=0}^{NL-1} (P^{-1})_{(k-1)N+p, m} H^{(m)},
// including the m = 0 term with H^{(0)} = -L: dropping it breaks
// completeness. u[k-1] = sum_p r_k omega^p P_{p,k}.
struct ProjectorFamily {
  int N = 0;
  int L = 0;
  std::vector<CMatrix> P;  // flat index (k-1)N + p
  std::vector<CMatrix> u;

  const CMatrix& at(int p, int k) const {  // p taken mod N, k in 1..L
    const int pp = ((p % N) + N) % N;
    return P[static_cast<std::size_t>((k - 1) * N + pp)];
  }
};

ProjectorFamily build_projectors(const HamiltonianTower& tower,
                                 const VandermondeSystem& vs,
                                 const SpectralData& sd);

struct ProjectorAxioms {
  double idempotency = 0.0;    // P^2 = P
  double orthogonality = 0.0;  // P_{p,k} P_{q,k} = 0 for p != q
  double completeness = 0.0;   // sum_p P_{p,k} = 1 for each k
  double commutation = 0.0;    // all pairs commute
};

ProjectorAxioms projector_axioms(const ProjectorFamily& pf);

// Each projector has rank N^{L-1}; the trace must equal it.
double projector_trace_residual(const ProjectorFamily& pf);

double projector_tower_commutation(const ProjectorFamily& pf,
                                   const HamiltonianTower& tower);

// H^{(m)} = -sum_{k,p} (r_k omega^p)^m P_{p,k} for m = 0 .. m_max; holds
// beyond the Vandermonde range m <= NL-1 because the family is spectral.
std::vector<double> hamiltonian_reconstruction_residuals(
    const ProjectorFamily& pf, const SpectralData& sd,
    const HamiltonianTower& tower, int m_max);

// tau2(t) = A0 prod_k (1 - omega t u_k), compared coefficient-wise.
double tau_reconstruction_residual(const ProjectorFamily& pf,
                                   const MatrixPoly& tau,
                                   const SpectralData& sd);

// [P_{p,k}, GammaHat_{q,l}] = delta_{kl} (delta_{p,q} - delta_{p,q-1})
// GammaHat_{q,l} with the deltas mod N. The sign pairs with the ladder
// action (n_l = q-1) -> (n_l = q): the projector onto the target sector
// picks the raised state up, the one onto the source sector loses it.
double projector_raising_residual(const ProjectorFamily& pf,
                                  const HattedGammas& hg);

}  // namespace tau2
