#pragma once

#include <vector>

#include "tau2/numerics.hpp"
#include "tau2/types.hpp"

namespace tau2 {

// Inhomogeneous couplings of the open chain. Arrays a, b, c, d carry the
// bulk values at positions 0 .. 2L-1. The fixed boundary values
//   a_{-1} = c_{-1} = d_{-1} = 0, b_{-1} = 1,
//   a_{2L} = c_{2L} = d_{2L} = 0, b_{2L} = 1
// are supplied by the *_at accessors and never stored.
struct ModelParams {
  int N = 0;
  int L = 0;
  std::vector<Complex> a, b, c, d;

  Complex a_at(int l) const;
  Complex b_at(int l) const;
  Complex c_at(int l) const;
  Complex d_at(int l) const;

  // Throws InvalidParams unless N >= 2, L >= 1, all four arrays have
  // length 2L and every b entry is nonzero.
  void validate() const;
};

// One face weight as an affine function of the spectral parameter t.
struct AffineWeight {
  Complex constant;
  Complex linear;  // multiplies t
};

// Face weight W_j(s_j, s_{j+1}, s'_{j+1}, s'_j); zero unless both primed
// spins equal their unprimed partner or that partner minus one (mod N).
AffineWeight irf_weight(const ModelParams& p, int j, int sj, int sj1,
                        int sj1p, int sjp);

// Row index = unprimed spin configuration, column = primed; site 1 is the
// most significant base-N digit. Coefficient m multiplies (omega t)^m.
// The boundary spin drops out of every element; the parameter exists so
// that independence can be demonstrated.
struct Tau2Build {
  MatrixPoly poly;        // coefficients 0..L
  double overflow = 0.0;  // max element magnitude at power L+1, over |A0|
};

Tau2Build build_tau2_detailed(const ModelParams& p, int boundary_spin = 0);
MatrixPoly build_tau2(const ModelParams& p, int boundary_spin = 0);

// A0 = b_0 b_1 ... b_{2L-1}, the t = 0 value of every diagonal element.
Complex a0_constant(const ModelParams& p);

// Product over the N rotations t -> omega^k t. The result must be a
// scalar polynomial in x = t^N times the identity; the two residuals
// measure the off-identity part per coefficient and the weight on powers
// not divisible by N, both relative to the largest coefficient norm.
struct FunctionalProduct {
  ScalarPoly f;  // in x = t^N, f(0) = A0^N
  double off_identity = 0.0;
  double off_period = 0.0;
};

FunctionalProduct functional_product(const MatrixPoly& tau, int n,
                                     double tol = 1e-9);

// Spectrum generator data. r_k is pinned to the sector arg in [0, 2pi/N)
// of the N-th root of 1/x_k and ordered by decreasing modulus (argument
// breaks ties). lambda[(k-1)N + p] = r_k omega^p. s_l = f_l / f_0.
struct SpectralData {
  int N = 0;
  int L = 0;
  Complex A0;
  std::vector<Complex> s;       // s_0 .. s_L, s_0 = 1
  std::vector<Complex> r;       // r_1 .. r_L at indices 0 .. L-1
  std::vector<Complex> lambda;  // NL values
};

SpectralData spectral_roots(const ScalarPoly& f, Complex a0, int n, int l);

// max_k |sum_l s_l r_k^{N(L-l)}| over sum_l |s_l| |r_k|^{N(L-l)}.
double root_relation_residual(const SpectralData& sd);

// Ratio (1e-6 max|lambda|) / (smallest pairwise gap); below 1 means the
// grid is usable for the Lagrange inverse.
double spectrum_gap_ratio(const SpectralData& sd);

// Largest relative commutator among coefficient pairs. Vanishing for all
// pairs is equivalent to [tau2(t), tau2(t')] = 0 for every t, t'.
double commuting_family_residual(const MatrixPoly& tau);

}  // namespace tau2
