#pragma once

#include <vector>

#include "tau2/numerics.hpp"
#include "tau2/types.hpp"

namespace tau2 {

// Single-site clock operators on C^N:
//   X |s> = |s+1 mod N>        ([X]_{s,s'} = delta_{s, s'+1})
//   Z |s> = omega^s |s>
//   Y = omega^{(N-1)/2} X^{-1} Z   (principal half power for even N)
// so ZX = omega XZ and X^N = Y^N = Z^N = 1.
struct ClockSite {
  int N = 0;
  Complex omega;
  CMatrix X, Z, Y;
};

ClockSite build_site_ops(int n);

// N^L as a matrix dimension; throws SizeError past 2^62.
Index state_dim(int n, int l);

// Identity on sites != site, `op` on `site` (1-based). Site 1 varies the
// most significant digit of the composite index.
CMatrix embed(const CMatrix& op, int site, int l);

// Parafermion string operators psi_0 .. psi_{2L-1} on the L-site chain:
//   psi_{2j-2} = X_1 ... X_{j-1} Z_j^{-1}
//   psi_{2j-1} = X_1 ... X_{j-1} Y_j^{-1}
// They satisfy psi^N = 1 and psi_j psi_k = omega^{-1} psi_k psi_j (j < k).
struct ParafermionSet {
  int N = 0;
  int L = 0;
  std::vector<CMatrix> psi;
};

ParafermionSet build_parafermions(int n, int l);

}  // namespace tau2
