#pragma once

#include <cstdint>
#include <vector>

#include "tau2/projector_engine.hpp"
#include "tau2/raising_operators.hpp"

namespace tau2 {

// Simultaneous eigenvector with every quantum number zero: a seeded random
// vector filtered through prod_k P_{0,k}, normalized, with the first
// nonzero amplitude rotated to the positive real axis. Retries with fresh
// draws up to eight times before giving up (ZeroProjection).
CVector ground_state(const ProjectorFamily& pf, std::uint64_t seed);

// Theta_{p,k} = GammaHat_{p,k} GammaHat_{p-1,k} ... GammaHat_{1,k};
// p = 0 gives the identity.
CMatrix raising_product(const HattedGammas& hg, int p, int k);

// All N^L joint eigenvectors, one column per quantum-number tuple. The
// column index encodes the tuple in base N with n_1 most significant,
// matching the spin-configuration indexing. Columns are unit norm and
// phase fixed like the ground state. inv is the matrix inverse of basis;
// abs_gram_det = |det(basis^dagger basis)|.
struct Eigenbasis {
  int N = 0;
  int L = 0;
  CMatrix basis;
  CMatrix inv;
  double abs_gram_det = 0.0;

  std::vector<int> tuple_at(Index idx) const;
  Index index_of(const std::vector<int>& n) const;
};

Eigenbasis build_eigenbasis(const ProjectorFamily& pf, const HattedGammas& hg,
                            std::uint64_t seed);

// tau2(t) v_n = A0 prod_k (1 - r_k omega^{1+n_k} t) v_n at three fixed
// sample values of t, scaled into the spectral radius.
double eigen_relation_residual(const Eigenbasis& eb, const MatrixPoly& tau,
                               const SpectralData& sd);

// H^{(m)} v_n = -sum_k (r_k omega^{n_k})^m v_n for m = 0 .. NL-1.
double tower_eigen_residual(const Eigenbasis& eb, const HamiltonianTower& tower,
                            const SpectralData& sd);

// P_{p,k} v_n = delta_{p,n_k} v_n.
double projector_eigen_residual(const Eigenbasis& eb,
                                const ProjectorFamily& pf);

// Off-diagonal weight of inv * A * basis, maximized over the given
// operators.
double diagonalization_residual(const Eigenbasis& eb,
                                const std::vector<CMatrix>& ops);

// In basis coordinates GammaHat_{q,k} must be supported exactly on the
// single transition (n_k = q-1) -> (n_k = q) per remaining tuple; weight
// anywhere else counts toward the residual.
double raising_ladder_residual(const Eigenbasis& eb, const HattedGammas& hg);

struct GammaStructure {
  // Weight of Gamma_j elements outside "one slot raised by one".
  double selection = 0.0;
  // <n|Gamma_j|n_k-lowered> = (r_k omega^{n_k})^j <n|GammaHat_{n_k,k}|...>.
  double moment = 0.0;
  // j = 0 template: allowed GammaHat elements equal the Gamma_0 elements.
  double template_match = 0.0;
};

GammaStructure gamma_structure_residuals(const GammaSequence& gs,
                                         const HattedGammas& hg,
                                         const Eigenbasis& eb,
                                         const SpectralData& sd);

struct ExchangeChecks {
  double identity = 0.0;  // summed two-family exchange identity
  double ratios = 0.0;    // the two element-ratio relations, eps = 0, 1
};

// Exhaustive over (k != l, p, q, spectator tuples) when N*L <= 9,
// otherwise a seeded sample of 64 combinations.
ExchangeChecks exchange_residuals(const GammaSequence& gs, const Eigenbasis& eb,
                                  const SpectralData& sd, std::uint64_t seed);

// (sum_q GammaHat_{q,k})^N against its best scalar multiple of the
// identity; reported, never asserted.
struct ScalarDefect {
  double defect = 0.0;
  Complex scalar;
};

ScalarDefect cyclic_shift_defect(const HattedGammas& hg, int k);

// Empirical exchange factor GammaHat_{p,k} GammaHat_{q,l} /
// GammaHat_{q,l} GammaHat_{p,k} on its one-dimensional support (k != l);
// returns the first observed ratio and the largest deviation from it.
struct ExchangeRatioReport {
  Complex ratio;
  double spread = 0.0;
  int samples = 0;
};

ExchangeRatioReport raising_exchange_ratios(const Eigenbasis& eb,
                                            const HattedGammas& hg);

}  // namespace tau2
