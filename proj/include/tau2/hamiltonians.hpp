#pragma once

#include <vector>

#include "tau2/clock_algebra.hpp"
#include "tau2/transfer_matrix.hpp"

namespace tau2 {

// Quadratic Hamiltonian of the open chain written in embedded clock
// operators (four double sums over site pairs).
CMatrix build_H_explicit(const ModelParams& p);

// The same Hamiltonian written as a parafermion bilinear. Agreement of the
// two forms, and of both with A0^{-1} tau_{2,1}, is a test target, so the
// routes share no code beyond the operator constructors.
CMatrix build_H_parafermion(const ModelParams& p, const ParafermionSet& pf);

// Homogeneous clock-chain couplings: alpha are the L transverse-field
// strengths, gamma the L-1 bond strengths.
struct ClockParams {
  std::vector<Complex> alpha;
  std::vector<Complex> gamma;
};

// Coupling arrays whose chain reduces to the clock Hamiltonian
// -sum alpha_j X_j - sum gamma_j Z_j Z_{j+1}^{-1}: all b = 1, all a = 0,
// d_{2j-2} = alpha_j, d_{2j-1} = 1, c_{2j-1} = gamma_j, c_{2j} = 1,
// with the unused c positions set to zero.
ModelParams clock_limit(int n, const ClockParams& cp);

// The clock Hamiltonian assembled directly from embedded X and Z Z^{-1}
// terms; reference for the clock_limit reduction.
CMatrix build_clock_hamiltonian(int n, const ClockParams& cp);

// Commuting tower from the logarithmic expansion of tau2. With
// g_m = tau_{2,m} / A0 the coefficients satisfy the Newton-type recursion
//   H^{(m)} = m g_m - sum_{j=1}^{m-1} g_{m-j} H^{(j)},
// seeded by the convention H^{(0)} = -L * identity, which makes the
// projector algebra close. `right_multiply` swaps the factor order in the
// recursion (the members commute, so both orders must agree).
struct HamiltonianTower {
  int L = 0;
  std::vector<CMatrix> H;  // indices 0 .. M
};

HamiltonianTower higher_hamiltonians(const MatrixPoly& tau, int l, int m_max,
                                     bool right_multiply = false);

// -sum_k (r_k omega^{n_k})^m for quantum numbers n (length L).
Complex predicted_eigenvalue(const SpectralData& sd, const std::vector<int>& n,
                             int m);

// Truncated exponential reconstruction: compares
// A0 exp(sum_m (omega t)^m H^{(m)} / m) against tau2 through degree L.
double tower_exp_residual(const MatrixPoly& tau, const HamiltonianTower& tower);

double tower_commutativity_residual(const HamiltonianTower& tower);

// Membership certificate: max over all N^L quantum-number tuples of
// sigma_min(H - E_n) / ||H||_F. Zero exactly when each predicted E_n is an
// eigenvalue of H; this route never touches the joint eigenbasis.
double eigenvalue_membership_residual(const CMatrix& h, const SpectralData& sd);

}  // namespace tau2
