#include "tau2/eigenbasis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tau2 {

namespace {

// Unit normalization with the first significant amplitude rotated onto the
// positive real axis, so repeated runs produce identical columns.
void normalize_phase(CVector& v) {
  v /= v.norm();
  const double vmax = v.cwiseAbs().maxCoeff();
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-12 * vmax) {
      v *= std::abs(v[i]) / v[i];
      return;
    }
  }
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

CVector ground_state(const ProjectorFamily& pf, std::uint64_t seed) {
  const Index dim = pf.P[0].rows();
  Lcg64 rng(seed);
  for (int attempt = 0; attempt < 8; ++attempt) {
    CVector w(dim);
    for (Index i = 0; i < dim; ++i) {
      const double re = 2.0 * rng.uniform01() - 1.0;
      const double im = 2.0 * rng.uniform01() - 1.0;
      w[i] = Complex(re, im);
    }
    CVector v = w;
    for (int k = 1; k <= pf.L; ++k) v = pf.at(0, k) * v;
    if (v.norm() >= 1e-8) {
      normalize_phase(v);
      return v;
    }
  }
  throw ZeroProjection("ground_state: projected vector vanished 8 times");
}

CMatrix raising_product(const HattedGammas& hg, int p, int k) {
  if (p < 0 || p > hg.N)
    throw InvalidParams("raising_product: power outside 0..N");
  if (k < 1 || k > hg.L) throw SiteOutOfRange("raising_product: bad mode");
  const Index dim = hg.op[0].rows();
  CMatrix acc = CMatrix::Identity(dim, dim);
  for (int q = p; q >= 1; --q) acc *= hg.at(q, k);
  return acc;
}

std::vector<int> Eigenbasis::tuple_at(Index idx) const {
  std::vector<int> n(L);
  for (int k = L - 1; k >= 0; --k) {
    n[k] = static_cast<int>(idx % N);
    idx /= N;
  }
  return n;
}

Index Eigenbasis::index_of(const std::vector<int>& n) const {
  Index idx = 0;
  for (int k = 0; k < L; ++k) idx = idx * N + (((n[k] % N) + N) % N);
  return idx;
}

Eigenbasis build_eigenbasis(const ProjectorFamily& pf, const HattedGammas& hg,
                            std::uint64_t seed) {
  const Index dim = pf.P[0].rows();
  Eigenbasis eb;
  eb.N = pf.N;
  eb.L = pf.L;
  eb.basis = CMatrix::Zero(dim, dim);

  const CVector v0 = ground_state(pf, seed);
  std::vector<CMatrix> theta(static_cast<std::size_t>(pf.N) * pf.L);
  for (int k = 1; k <= pf.L; ++k)
    for (int p = 0; p < pf.N; ++p)
      theta[(k - 1) * pf.N + p] = raising_product(hg, p, k);

  for (Index idx = 0; idx < dim; ++idx) {
    const std::vector<int> n = eb.tuple_at(idx);
    CVector v = v0;
    for (int k = pf.L; k >= 1; --k) v = theta[(k - 1) * pf.N + n[k - 1]] * v;
    if (v.norm() < 1e-8)
      throw DegenerateBasis("build_eigenbasis: raising chain annihilated state");
    normalize_phase(v);
    eb.basis.col(idx) = v;
  }

  const double log_abs = lu_log_abs_det(eb.basis);
  eb.abs_gram_det = std::isfinite(log_abs) ? std::exp(2.0 * log_abs) : 0.0;
  if (eb.abs_gram_det == 0.0)
    throw DegenerateBasis("build_eigenbasis: basis matrix singular");
  eb.inv = Eigen::PartialPivLU<CMatrix>(eb.basis).inverse();
  return eb;
}

double eigen_relation_residual(const Eigenbasis& eb, const MatrixPoly& tau,
                               const SpectralData& sd) {
  double rmax = 0.0;
  for (const Complex& rk : sd.r) rmax = std::max(rmax, std::abs(rk));
  const Complex samples[3] = {Complex(0.31, 0.17), Complex(-0.42, 0.23),
                              Complex(0.11, -0.52)};
  const Complex om = omega_root(sd.N);
  double worst = 0.0;
  for (const Complex& c : samples) {
    const Complex t = c / (1.0 + rmax);
    const CMatrix m = tau.eval(om * t);
    const double scale = m.norm();
    for (Index idx = 0; idx < eb.basis.cols(); ++idx) {
      const std::vector<int> n = eb.tuple_at(idx);
      Complex mu = sd.A0;
      for (int k = 0; k < sd.L; ++k)
        mu *= Complex(1.0, 0.0) -
              sd.r[k] * omega_int_pow(sd.N, 1 + n[k]) * t;
      const CVector v = eb.basis.col(idx);
      worst = std::max(worst, (m * v - mu * v).norm() / scale);
    }
  }
  return worst;
}

double tower_eigen_residual(const Eigenbasis& eb, const HamiltonianTower& tower,
                            const SpectralData& sd) {
  const int nl = sd.N * sd.L;
  double worst = 0.0;
  for (int m = 0; m < nl && m < static_cast<int>(tower.H.size()); ++m) {
    const double scale = tower.H[m].norm();
    for (Index idx = 0; idx < eb.basis.cols(); ++idx) {
      const Complex e = predicted_eigenvalue(sd, eb.tuple_at(idx), m);
      const CVector v = eb.basis.col(idx);
      worst = std::max(worst, (tower.H[m] * v - e * v).norm() / scale);
    }
  }
  return worst;
}

double projector_eigen_residual(const Eigenbasis& eb,
                                const ProjectorFamily& pf) {
  double worst = 0.0;
  for (int k = 1; k <= pf.L; ++k)
    for (int p = 0; p < pf.N; ++p) {
      const CMatrix& proj = pf.at(p, k);
      const double scale = std::max(proj.norm(), 1.0);
      for (Index idx = 0; idx < eb.basis.cols(); ++idx) {
        const std::vector<int> n = eb.tuple_at(idx);
        const CVector v = eb.basis.col(idx);
        const CVector want = (n[k - 1] == p) ? v : CVector(CVector::Zero(v.size()));
        worst = std::max(worst, (proj * v - want).norm() / scale);
      }
    }
  return worst;
}

double diagonalization_residual(const Eigenbasis& eb,
                                const std::vector<CMatrix>& ops) {
  double worst = 0.0;
  for (const CMatrix& a : ops) {
    CMatrix d = eb.inv * a * eb.basis;
    const double scale = d.norm();
    d.diagonal().setZero();
    worst = std::max(worst, rel_residual(d, scale));
  }
  return worst;
}

double raising_ladder_residual(const Eigenbasis& eb, const HattedGammas& hg) {
  const int n = hg.N, l = hg.L;
  double worst = 0.0;
  for (int k = 1; k <= l; ++k)
    for (int q = 0; q < n; ++q) {
      CMatrix g = eb.inv * hg.at(q, k) * eb.basis;
      const double scale = g.norm();
      for (Index col = 0; col < g.cols(); ++col) {
        std::vector<int> t = eb.tuple_at(col);
        if (t[k - 1] == ((q - 1) % n + n) % n) {
          t[k - 1] = q;
          g(eb.index_of(t), col) = Complex(0.0, 0.0);  // the allowed element
        }
      }
      worst = std::max(worst, rel_residual(g, scale));
    }
  return worst;
}

GammaStructure gamma_structure_residuals(const GammaSequence& gs,
                                         const HattedGammas& hg,
                                         const Eigenbasis& eb,
                                         const SpectralData& sd) {
  const int nl = sd.N * sd.L;
  const Index dim = eb.basis.rows();
  std::vector<CMatrix> gj(nl), ghat(nl);
  for (int j = 0; j < nl; ++j) {
    gj[j] = eb.inv * gs.gamma[j] * eb.basis;
    ghat[j] = eb.inv * hg.op[j] * eb.basis;
  }

  GammaStructure out;
  double moment_worst_abs = 0.0, moment_scale = 0.0;
  double templ_worst_abs = 0.0, templ_scale = 0.0;

  for (int j = 0; j < nl; ++j) {
    CMatrix forbidden = gj[j];
    for (Index col = 0; col < dim; ++col) {
      const std::vector<int> t = eb.tuple_at(col);
      for (int k = 1; k <= sd.L; ++k) {
        std::vector<int> up = t;
        up[k - 1] = (up[k - 1] + 1) % sd.N;
        const Index row = eb.index_of(up);
        const Complex x = gj[j](row, col);
        // alpha_k after the raise: the quantum number the hat index uses.
        const int ak = up[k - 1];
        const Complex lam = sd.r[k - 1] * omega_int_pow(sd.N, ak);
        const Complex y =
            cpow_int(lam, j) * ghat[(k - 1) * sd.N + ak](row, col);
        moment_worst_abs = std::max(moment_worst_abs, std::abs(x - y));
        moment_scale =
            std::max({moment_scale, std::abs(x), std::abs(y)});
        forbidden(row, col) = Complex(0.0, 0.0);
      }
    }
    out.selection =
        std::max(out.selection, rel_residual(forbidden, gj[j].norm()));
  }
  out.moment = moment_scale > 0.0 ? moment_worst_abs / moment_scale
                                  : moment_worst_abs;

  for (int k = 1; k <= sd.L; ++k)
    for (int p = 0; p < sd.N; ++p) {
      const CMatrix& g = ghat[(k - 1) * sd.N + p];
      for (Index col = 0; col < dim; ++col) {
        std::vector<int> t = eb.tuple_at(col);
        if (t[k - 1] != ((p - 1) % sd.N + sd.N) % sd.N) continue;
        t[k - 1] = p;
        const Index row = eb.index_of(t);
        const Complex want = gj[0](row, col);
        templ_worst_abs =
            std::max(templ_worst_abs, std::abs(g(row, col) - want));
        templ_scale = std::max(templ_scale, std::abs(want));
      }
    }
  out.template_match =
      templ_scale > 0.0 ? templ_worst_abs / templ_scale : templ_worst_abs;
  return out;
}

ExchangeChecks exchange_residuals(const GammaSequence& gs, const Eigenbasis& eb,
                                  const SpectralData& sd, std::uint64_t seed) {
  const int n = sd.N, l = sd.L;
  ExchangeChecks out;
  if (l < 2) return out;  // needs two distinct modes

  const CMatrix g0 = eb.inv * gs.gamma[0] * eb.basis;
  const CMatrix g1 = eb.inv * gs.gamma[1] * eb.basis;
  const Complex om_inv = omega_int_pow(n, -1);
  const CMatrix mixed = g0 * g1 - om_inv * (g1 * g0);
  const double el_scale = max_abs(g0) * max_abs(g1);
  const double ratio_scale = max_abs(g1);

  // Spectator configurations for the L-2 untouched slots.
  Index spectators = 1;
  for (int i = 0; i < l - 2; ++i) spectators *= n;

  struct Combo {
    int k, ll, p, q;
    Index spec;
  };
  std::vector<Combo> combos;
  if (n * l <= 9) {
    for (int k = 1; k <= l; ++k)
      for (int ll = k + 1; ll <= l; ++ll)
        for (int p = 0; p < n; ++p)
          for (int q = 0; q < n; ++q)
            for (Index s = 0; s < spectators; ++s)
              combos.push_back({k, ll, p, q, s});
  } else {
    Lcg64 rng(seed);
    for (int i = 0; i < 64; ++i) {
      Combo c;
      c.k = 1 + static_cast<int>(rng.uniform01() * l);
      c.k = std::min(c.k, l);
      do {
        c.ll = 1 + static_cast<int>(rng.uniform01() * l);
        c.ll = std::min(c.ll, l);
      } while (c.ll == c.k);
      if (c.k > c.ll) std::swap(c.k, c.ll);
      c.p = static_cast<int>(rng.uniform01() * n) % n;
      c.q = static_cast<int>(rng.uniform01() * n) % n;
      c.spec = static_cast<Index>(rng.uniform01() * spectators) % spectators;
      combos.push_back(c);
    }
  }

  auto tuple_from = [&](const Combo& c, int vk, int vl) {
    std::vector<int> t(l);
    Index s = c.spec;
    for (int slot = l; slot >= 1; --slot) {
      if (slot == c.k || slot == c.ll) continue;
      t[slot - 1] = static_cast<int>(s % n);
      s /= n;
    }
    t[c.k - 1] = ((vk % n) + n) % n;
    t[c.ll - 1] = ((vl % n) + n) % n;
    return t;
  };

  for (const Combo& c : combos) {
    const Index row = eb.index_of(tuple_from(c, c.p, c.q));
    const Index col = eb.index_of(tuple_from(c, c.p - 1, c.q - 1));
    out.identity = std::max(
        out.identity, el_scale > 0.0 ? std::abs(mixed(row, col)) / el_scale
                                     : std::abs(mixed(row, col)));

    const Complex rk = sd.r[c.k - 1] * omega_int_pow(n, c.p);
    const Complex rl = sd.r[c.ll - 1] * omega_int_pow(n, c.q);
    for (int eps = 0; eps <= 1; ++eps) {
      // Raise slot k: element of Gamma_1 is r_k omega^p times Gamma_0's.
      Index a = eb.index_of(tuple_from(c, c.p, c.q - eps));
      Index b = eb.index_of(tuple_from(c, c.p - 1, c.q - eps));
      double num = std::abs(g1(a, b) - rk * g0(a, b));
      double den = std::max({std::abs(g1(a, b)), std::abs(rk * g0(a, b)),
                             1e-6 * ratio_scale});
      out.ratios = std::max(out.ratios, num / den);
      // Raise slot l.
      a = eb.index_of(tuple_from(c, c.p - eps, c.q));
      b = eb.index_of(tuple_from(c, c.p - eps, c.q - 1));
      num = std::abs(g1(a, b) - rl * g0(a, b));
      den = std::max({std::abs(g1(a, b)), std::abs(rl * g0(a, b)),
                      1e-6 * ratio_scale});
      out.ratios = std::max(out.ratios, num / den);
    }
  }
  return out;
}

ScalarDefect cyclic_shift_defect(const HattedGammas& hg, int k) {
  if (k < 1 || k > hg.L) throw SiteOutOfRange("cyclic_shift_defect: bad mode");
  const Index dim = hg.op[0].rows();
  CMatrix t = CMatrix::Zero(dim, dim);
  for (int q = 0; q < hg.N; ++q) t += hg.at(q, k);
  CMatrix tn = CMatrix::Identity(dim, dim);
  for (int i = 0; i < hg.N; ++i) tn *= t;
  ScalarDefect out;
  out.scalar = tn.trace() / static_cast<double>(dim);
  const CMatrix diff =
      tn - out.scalar * CMatrix::Identity(dim, dim);
  out.defect = rel_residual(diff, std::max(tn.norm(), 1e-30));
  return out;
}

ExchangeRatioReport raising_exchange_ratios(const Eigenbasis& eb,
                                            const HattedGammas& hg) {
  const int n = hg.N, l = hg.L;
  ExchangeRatioReport rep;
  rep.ratio = Complex(0.0, 0.0);
  if (l < 2) return rep;

  std::vector<CMatrix> ghat(hg.op.size());
  for (std::size_t i = 0; i < hg.op.size(); ++i)
    ghat[i] = eb.inv * hg.op[i] * eb.basis;
  double scale = 0.0;
  for (const CMatrix& g : ghat) scale = std::max(scale, max_abs(g));

  for (int k = 1; k <= l; ++k)
    for (int ll = k + 1; ll <= l; ++ll)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          const CMatrix& gk = ghat[(k - 1) * n + p];
          const CMatrix& gl = ghat[(ll - 1) * n + q];
          const CMatrix ab = gk * gl, ba = gl * gk;
          for (Index col = 0; col < eb.basis.cols(); ++col) {
            std::vector<int> t = eb.tuple_at(col);
            if (t[k - 1] != ((p - 1) % n + n) % n) continue;
            if (t[ll - 1] != ((q - 1) % n + n) % n) continue;
            t[k - 1] = p;
            t[ll - 1] = q;
            const Index row = eb.index_of(t);
            if (std::abs(ba(row, col)) < 1e-10 * scale * scale) continue;
            const Complex ratio = ab(row, col) / ba(row, col);
            if (rep.samples == 0)
              rep.ratio = ratio;
            else
              rep.spread = std::max(rep.spread, std::abs(ratio - rep.ratio));
            ++rep.samples;
          }
        }
  return rep;
}

}  // namespace tau2
