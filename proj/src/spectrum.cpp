#include "cyqw/spectrum.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

namespace cyqw {

namespace {

// Numerov pencil on the interior nodes: A u = E B u with
//   A = -T/dz^2 + B_N diag(W),  B_N = I + T/12,
// where T is the second-difference stencil.  B_N^{-1} A is symmetric (T and
// B_N commute), so shift-inverted Lanczos in the Euclidean inner product is
// valid on M = (A - sigma B_N)^{-1} B_N.
struct NumerovOp {
  int n = 0;
  double dz = 0.0;
  std::vector<double> dl, d, du, du2;
  std::vector<lapack_int> ipiv;
  double sigma = 0.0;

  NumerovOp(const std::vector<double>& Wi, double dz_) : n((int)Wi.size()), dz(dz_) {
    sigma = *std::min_element(Wi.begin(), Wi.end()) - 1.0;
    const double c = 1.0 / (dz * dz);
    d.resize(n);
    dl.resize(n - 1);
    du.resize(n - 1);
    du2.resize(n - 2);
    ipiv.resize(n);
    for (int i = 0; i < n; ++i) d[i] = 2.0 * c + (10.0 / 12.0) * (Wi[i] - sigma);
    for (int i = 0; i < n - 1; ++i) {
      dl[i] = -c + (Wi[i] - sigma) / 12.0;      // row i+1, col i
      du[i] = -c + (Wi[i + 1] - sigma) / 12.0;  // row i, col i+1
    }
    lapack_int info = LAPACKE_dgttrf(n, dl.data(), d.data(), du.data(), du2.data(), ipiv.data());
    if (info != 0) throw Error("solve_eigs: tridiagonal factorization failed");
  }

  void bmul(const double* x, double* y) const {
    for (int i = 0; i < n; ++i) {
      double s = (10.0 / 12.0) * x[i];
      if (i > 0) s += x[i - 1] / 12.0;
      if (i + 1 < n) s += x[i + 1] / 12.0;
      y[i] = s;
    }
  }

  // y = (A - sigma B_N)^{-1} B_N x
  void apply(const double* x, double* y) const {
    bmul(x, y);
    lapack_int info = LAPACKE_dgttrs(LAPACK_ROW_MAJOR, 'N', n, 1, dl.data(), d.data(),
                                     du.data(), du2.data(), ipiv.data(), y, 1);
    if (info != 0) throw Error("solve_eigs: tridiagonal solve failed");
  }
};

double dot(const double* a, const double* b, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

void solve_eigs_raw(const std::vector<double>& W, const Grid1D& grid, int P,
                    std::vector<double>& E, std::vector<double>& chi) {
  const int nz = grid.nz;
  if (P > nz / 4) throw Error("solve_eigs: P exceeds n_z/4 resolution margin");
  const int n = nz - 1;  // interior nodes j = 1..nz-1
  std::vector<double> Wi(W.begin() + 1, W.end());
  NumerovOp op(Wi, grid.dz);

  const int K = std::min(n, 2 * P + 80);
  std::vector<double> V((std::size_t)K * n), al(K), be(K, 0.0);
  std::vector<double> w(n), vprev(n, 0.0);

  // deterministic pseudo-random start (mixes both parities)
  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  double* v0 = V.data();
  for (int i = 0; i < n; ++i) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    v0[i] = ((state >> 11) * 0x1.0p-53) - 0.5;
  }
  {
    const double nrm = std::sqrt(dot(v0, v0, n));
    for (int i = 0; i < n; ++i) v0[i] /= nrm;
  }

  int kk = K;
  for (int k = 0; k < K; ++k) {
    const double* vk = V.data() + (std::size_t)k * n;
    op.apply(vk, w.data());
    if (k > 0)
      for (int i = 0; i < n; ++i) w[i] -= be[k - 1] * vprev[i];
    al[k] = dot(w.data(), vk, n);
    for (int i = 0; i < n; ++i) w[i] -= al[k] * vk[i];
    // full reorthogonalization, two passes
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j <= k; ++j) {
        const double* vj = V.data() + (std::size_t)j * n;
        const double c = dot(w.data(), vj, n);
        for (int i = 0; i < n; ++i) w[i] -= c * vj[i];
      }
    const double b = std::sqrt(dot(w.data(), w.data(), n));
    if (k + 1 == K || b < 1e-14) {
      kk = k + 1;
      break;
    }
    be[k] = b;
    std::memcpy(vprev.data(), vk, n * sizeof(double));
    double* vnext = V.data() + (std::size_t)(k + 1) * n;
    for (int i = 0; i < n; ++i) vnext[i] = w[i] / b;
  }
  if (kk < P) throw Error("solve_eigs: Krylov space exhausted before P modes");

  std::vector<double> td(al.begin(), al.begin() + kk), te(be.begin(), be.begin() + kk);
  std::vector<double> Z((std::size_t)kk * kk);
  lapack_int info = LAPACKE_dstev(LAPACK_ROW_MAJOR, 'V', kk, td.data(), te.data(), Z.data(), kk);
  if (info != 0) throw Error("solve_eigs: Ritz tridiagonal eigensolve failed (info=" +
                             std::to_string((long)info) + ")");

  // p-th lowest pencil eigenvalue = sigma + 1/theta with theta the
  // (kk-1-p)-th (largest) Ritz value.
  E.assign(P, 0.0);
  chi.assign((std::size_t)P * nz, 0.0);
  std::vector<double> u(n);
  for (int p = 0; p < P; ++p) {
    const int col = kk - 1 - p;
    const double theta = td[col];
    if (theta <= 0.0) throw Error("solve_eigs: non-positive shift-invert Ritz value");
    E[p] = op.sigma + 1.0 / theta;
    std::fill(u.begin(), u.end(), 0.0);
    for (int j = 0; j < kk; ++j) {
      const double c = Z[(std::size_t)j * kk + col];
      const double* vj = V.data() + (std::size_t)j * n;
      for (int i = 0; i < n; ++i) u[i] += c * vj[i];
    }
    // normalize in the dz quadrature
    double nrm = std::sqrt(dot(u.data(), u.data(), n) * grid.dz);
    // sign: first interior extremum from the left positive
    double mx = 0.0;
    for (int i = 0; i < n; ++i) mx = std::max(mx, std::abs(u[i]));
    int j0 = 0;
    while (j0 < n && std::abs(u[j0]) < 1e-6 * mx) ++j0;
    while (j0 + 1 < n && std::abs(u[j0 + 1]) > std::abs(u[j0])) ++j0;
    if (u[j0] < 0.0) nrm = -nrm;
    for (int i = 0; i < n; ++i) chi[(std::size_t)p * nz + (i + 1)] = u[i] / nrm;
  }

  // convergence check: pencil Rayleigh quotient vs Ritz eigenvalue
  for (int p = 0; p < P; ++p) {
    const double* c = chi.data() + (std::size_t)p * nz;
    double num = 0.0, den = 0.0;
    const double inv = 1.0 / (grid.dz * grid.dz);
    for (int i = 0; i < n; ++i) {
      const double uj = c[i + 1];
      const double um = c[i];                        // c[0] = 0 boundary
      const double up = (i + 2 < nz) ? c[i + 2] : 0.0;  // Dirichlet at +L_z
      double bu = (10.0 * uj + um + up) / 12.0;
      num += (-(um - 2.0 * uj + up) * inv + bu * W[i + 1]) * uj;
      den += bu * uj;
    }
    const double R = num / den;
    if (std::abs(R - E[p]) > 1e-8 * std::max(std::abs(E[p]), 1.0))
      throw Error("solve_eigs: Rayleigh consistency failed at mode " + std::to_string(p));
  }
}

EigenBasis solve_eigs(const Potential& pot, const Grid1D& grid, int P) {
  const int nz = grid.nz;
  std::vector<double> W(nz);
  for (int j = 0; j < nz; ++j)
    W[j] = pot.Vc[j] + pot.B * pot.B * grid.z[j] * grid.z[j];

  EigenBasis basis;
  basis.P = P;
  basis.grid = grid;
  basis.potential_fingerprint = pot.fingerprint;
  solve_eigs_raw(W, grid, P, basis.E, basis.chi);

  // ---- invariant verification ----
  for (int p = 0; p + 1 < P; ++p) {
    const double gap = basis.E[p + 1] - basis.E[p];
    if (gap <= 0.0) throw Error("solve_eigs: spectrum not strictly ascending");
    if (gap < 1e-10 * std::abs(basis.E[p + 1]))
      throw Error("solve_eigs: near-degenerate pair, discretization failure");
  }
  for (int p = 0; p < P; ++p)
    for (int q = p; q < P; ++q) {
      double s = 0.0;
      const double *cp = basis.mode(p), *cq = basis.mode(q);
      for (int j = 0; j < nz; ++j) s += cp[j] * cq[j];
      s *= grid.dz;
      if (std::abs(s - (p == q ? 1.0 : 0.0)) > 1e-10)
        throw Error("solve_eigs: orthonormality violation");
    }
  // parity alternation (even total potential)
  for (int p = 0; p < P; ++p) {
    const double* c = basis.mode(p);
    const double sgn = (p % 2 == 0) ? 1.0 : -1.0;
    for (int j = 1; j < nz; ++j)
      if (std::abs(c[j] - sgn * c[nz - j]) > 1e-8)
        throw Error("solve_eigs: parity alternation violation at mode " + std::to_string(p));
  }
  // Weyl lower bound with the global quadratic minorant of V_c
  double a2 = std::numeric_limits<double>::infinity();
  for (int j = 1; j < nz; ++j) {
    if (std::abs(grid.z[j]) < 0.5 * grid.dz) continue;
    a2 = std::min(a2, pot.Vc[j] / (grid.z[j] * grid.z[j]));
  }
  a2 = std::max(a2, 0.0);
  const double om = std::sqrt(a2 + pot.B * pot.B);
  const double dz4 = std::pow(grid.dz, 4);
  for (int p = 0; p < P; ++p) {
    // discretization slack: the 4th-order stencil sits below the continuum
    // eigenvalue by O(E^3 dz^4 / 240); allow 4x that before flagging.
    const double slack = 1e-6 * basis.E[p] + std::pow(basis.E[p], 3) * dz4 / 60.0;
    if (basis.E[p] < om * (2 * p + 1) - slack)
      throw Error("solve_eigs: Weyl lower bound violated at mode " + std::to_string(p));
  }
  return basis;
}

GapReport check_gap(const EigenBasis& basis) {
  GapReport r;
  const int P = basis.P;
  if (P < 3) throw Error("check_gap: need P >= 3");
  r.low_confidence = (P == 3);
  r.gaps.resize(P - 1);
  bool pos = true;
  for (int p = 0; p + 1 < P; ++p) {
    r.gaps[p] = basis.E[p + 1] - basis.E[p];
    pos = pos && r.gaps[p] > 0.0;
  }
  // least squares of log gap vs log(1+p); bound is gap >= C (1+p)^{-n0}
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int m = P - 1;
  for (int p = 0; p < m; ++p) {
    const double lx = std::log(1.0 + p), ly = std::log(r.gaps[p]);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  r.n0 = std::max(0.0, -slope);
  double C = std::numeric_limits<double>::infinity();
  for (int p = 0; p < m; ++p) C = std::min(C, r.gaps[p] * std::pow(1.0 + p, r.n0));
  r.C = C;
  r.pass = pos;
  return r;
}

Field3D project_modes(const Field3D& f, const EigenBasis& basis, double* tail_frac) {
  if (f.repr != Repr::GridZ) throw Error("project_modes: field must be grid-z");
  if (f.nzp != basis.grid.nz) throw Error("project_modes: grid mismatch");
  const int nx = f.g2.nx, ny = f.g2.ny, nz = f.nzp, P = basis.P;
  Field3D out = Field3D::make(Repr::ModeZ, f.g2, basis.grid, P);
  const double dz = basis.grid.dz;
  std::vector<double> m_tot(nx, 0.0), m_mod(nx, 0.0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nx; ++i) {
    double mt = 0.0, mm = 0.0;
    for (int j = 0; j < ny; ++j) {
      const cplx* col = &f.at(i, j, 0);
      for (int k = 0; k < nz; ++k) mt += std::norm(col[k]);
      for (int p = 0; p < P; ++p) {
        const double* c = basis.mode(p);
        cplx s(0.0, 0.0);
        for (int k = 0; k < nz; ++k) s += col[k] * c[k];
        s *= dz;
        out.at(i, j, p) = s;
        mm += std::norm(s);
      }
    }
    m_tot[i] = mt * dz;
    m_mod[i] = mm;
  }
  if (tail_frac) {
    const double tot = pairwise_sum(m_tot), mod = pairwise_sum(m_mod);
    *tail_frac = tot > 0.0 ? std::max(0.0, (tot - mod) / tot) : 0.0;
  }
  return out;
}

Field3D synth_modes(const Field3D& f, const EigenBasis& basis) {
  if (f.repr != Repr::ModeZ) throw Error("synth_modes: field must be mode-z");
  if (f.nzp != basis.P) throw Error("synth_modes: mode count mismatch");
  const int nx = f.g2.nx, ny = f.g2.ny, nz = basis.grid.nz, P = basis.P;
  Field3D out = Field3D::make(Repr::GridZ, f.g2, basis.grid, nz);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      cplx* col = &out.at(i, j, 0);
      for (int p = 0; p < P; ++p) {
        const cplx a = f.at(i, j, p);
        const double* c = basis.mode(p);
        for (int k = 0; k < nz; ++k) col[k] += a * c[k];
      }
    }
  return out;
}

int select_P(const Potential& pot, const Grid1D& grid, int Pmax) {
  const int cap = std::min(Pmax, grid.nz / 4);
  EigenBasis b = solve_eigs(pot, grid, cap);
  for (int P = 2; P <= cap; ++P)
    if (b.E[P - 1] >= 20.0 * b.E[0]) return P;
  return cap;
}

}  // namespace cyqw
