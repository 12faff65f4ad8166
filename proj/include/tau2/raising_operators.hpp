#pragma once

#include <vector>

#include "tau2/hamiltonians.hpp"
#include "tau2/numerics.hpp"
#include "tau2/transfer_matrix.hpp"

namespace tau2 {

// Commutator ladder Gamma_0 = Z_1^{-1},
// Gamma_{j+1} = (omega^{-1} - 1)^{-1} [H, Gamma_j].
struct GammaSequence {
  int N = 0;
  std::vector<CMatrix> gamma;  // indices 0 .. jmax
};

GammaSequence gamma_sequence(const CMatrix& h, const CMatrix& z1_inv, int n,
                             int jmax);

// Closed form of Gamma_1 as a parafermion combination; independent of the
// commutator route.
CMatrix gamma1_closed_form(const ModelParams& p, const ParafermionSet& pf);

// Residuals of sum_l s_l Gamma_{N(L-l)+j} = 0 for j = 0 .. jmax, each
// relative to the largest term norm. Needs gamma up to NL + jmax.
std::vector<double> truncation_residuals(const GammaSequence& gs,
                                         const SpectralData& sd, int jmax);

// NL x NL companion matrix: ones on the superdiagonal, last row carrying
// -s_{L-m} at the columns divisible by N.
CMatrix companion_matrix(const SpectralData& sd);

// Row-wise residual of [H, Gamma_j] = (omega^{-1}-1) sum_k h_{jk} Gamma_k.
double companion_action_residual(const CMatrix& h, const GammaSequence& gs,
                                 const CMatrix& companion);

// det(z I - m) recovered from dim+1 determinant samples on the circle of
// the given radius (nodes are scaled roots of unity, an inverse DFT).
ScalarPoly charpoly_interpolated(const CMatrix& m, double sample_radius);

// max_i |charpoly(lambda_i)| scaled by sum_k |a_k| |lambda_i|^k.
double charpoly_vanishing_residual(const ScalarPoly& cp,
                                   const std::vector<Complex>& lambdas);

// Diagonalizing combinations GammaHat_i = sum_j (P^{-1})_{ij} Gamma_j with
// flat index i = (k-1)N + p for lambda_i = r_k omega^p.
struct HattedGammas {
  int N = 0;
  int L = 0;
  std::vector<CMatrix> op;

  const CMatrix& at(int q, int k) const {  // q taken mod N, k in 1..L
    const int qq = ((q % N) + N) % N;
    return op[static_cast<std::size_t>((k - 1) * N + qq)];
  }
};

HattedGammas build_gamma_hat(const GammaSequence& gs,
                             const VandermondeSystem& vs, int n, int l);

// max_i residual of [H, GammaHat_i] = (omega^{-1}-1) lambda_i GammaHat_i.
double eigencommutator_residual(const CMatrix& h, const HattedGammas& hg,
                                const SpectralData& sd);

// Vandermonde resynthesis Gamma_j = sum_i lambda_i^j GammaHat_i.
double gamma_reconstruction_residual(const GammaSequence& gs,
                                     const HattedGammas& hg,
                                     const SpectralData& sd);

// Polynomial identity (1 - r_l omega^q t) tau2(t) GammaHat =
// (1 - r_l omega^{q+1} t) GammaHat tau2(t), checked coefficient by
// coefficient in t for every (q, l).
double intertwining_residual(const HattedGammas& hg, const MatrixPoly& tau,
                             const SpectralData& sd);

}  // namespace tau2
