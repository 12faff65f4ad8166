#include "tau2/clock_algebra.hpp"

namespace tau2 {

ClockSite build_site_ops(int n) {
  if (n < 2) throw InvalidN("build_site_ops: need N >= 2");
  ClockSite site;
  site.N = n;
  site.omega = omega_root(n);
  site.X = CMatrix::Zero(n, n);
  site.Z = CMatrix::Zero(n, n);
  for (int s = 0; s < n; ++s) {
    site.X((s + 1) % n, s) = Complex(1.0, 0.0);
    site.Z(s, s) = omega_int_pow(n, s);
  }
  // X is a real permutation matrix, so X^{-1} = X^T.
  site.Y = omega_half_pow(n, n - 1) * site.X.transpose() * site.Z;
  return site;
}

Index state_dim(int n, int l) {
  if (n < 2) throw InvalidN("state_dim: need N >= 2");
  if (l < 1) throw InvalidParams("state_dim: need L >= 1");
  Index dim = 1;
  for (int i = 0; i < l; ++i) {
    if (dim > (Index(1) << 62) / n)
      throw SizeError("state_dim: N^L overflows");
    dim *= n;
  }
  return dim;
}

CMatrix embed(const CMatrix& op, int site, int l) {
  if (op.rows() != op.cols() || op.rows() < 2)
    throw InvalidParams("embed: operator must be square, dim >= 2");
  if (site < 1 || site > l)
    throw SiteOutOfRange("embed: site index outside 1..L");
  const int n = static_cast<int>(op.rows());
  CMatrix out = op;
  if (site > 1)
    out = kron(CMatrix::Identity(state_dim(n, site - 1), state_dim(n, site - 1)), out);
  if (site < l)
    out = kron(out, CMatrix::Identity(state_dim(n, l - site), state_dim(n, l - site)));
  return out;
}

ParafermionSet build_parafermions(int n, int l) {
  const ClockSite site = build_site_ops(n);
  const Index dim = state_dim(n, l);
  ParafermionSet pf;
  pf.N = n;
  pf.L = l;
  pf.psi.reserve(2 * l);
  CMatrix prefix = CMatrix::Identity(dim, dim);  // X_1 ... X_{j-1}
  for (int j = 1; j <= l; ++j) {
    pf.psi.push_back(prefix * embed(site.Z.adjoint(), j, l));
    pf.psi.push_back(prefix * embed(site.Y.adjoint(), j, l));
    prefix *= embed(site.X, j, l);
  }
  return pf;
}

}  // namespace tau2
