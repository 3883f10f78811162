#include "cyqw/coupling.hpp"

#include <algorithm>
#include <cmath>

#include "cyqw/fft.hpp"

namespace cyqw {

std::vector<double> coupling_coeffs(const EigenBasis& basis, double B) {
  const int P = basis.P, nz = basis.grid.nz;
  std::vector<double> a((std::size_t)P * P, 0.0);
  if (B == 0.0) return a;  // exact: the factor B multiplies everything
  for (int p = 0; p < P; ++p)
    for (int q = p; q < P; ++q) {
      const double *cp = basis.mode(p), *cq = basis.mode(q);
      double s = 0.0;
      for (int j = 0; j < nz; ++j) s += basis.grid.z[j] * cp[j] * cq[j];
      s *= 2.0 * B * basis.grid.dz;
      a[(std::size_t)p * P + q] = s;
      a[(std::size_t)q * P + p] = s;  // symmetric by construction
    }
  double amax = 0.0;
  for (double v : a) amax = std::max(amax, std::abs(v));
  for (int p = 0; p < P; ++p)
    if (std::abs(a[(std::size_t)p * P + p]) > 1e-10 * amax)
      throw Error("coupling_coeffs: nonzero diagonal, grid asymmetry suspected");
  return a;
}

CouplingData effective_mass_coeffs(const EigenBasis& basis, double B) {
  CouplingData cd;
  const int P = basis.P;
  cd.P = P;
  cd.basis_fingerprint = basis.potential_fingerprint;
  cd.a = coupling_coeffs(basis, B);
  cd.alpha.assign(P, 1.0);
  cd.alpha_alt.assign(P, 1.0);
  cd.tail_bound.assign(P, 0.0);
  cd.trusted.assign(P, 0);
  const double Emax = basis.E[P - 1];
  for (int p = 0; p < P; ++p) {
    double s1 = 0.0, s2 = 0.0;
    for (int q = 0; q < P; ++q) {
      if (q == p) continue;
      const double d = basis.E[q] - basis.E[p];
      if (std::abs(d) < 1e-10 * Emax)
        throw Error("effective_mass_coeffs: eigenvalue difference below degeneracy guard");
      const double a2 = cd.at(p, q) * cd.at(p, q);
      s1 += a2 / d;
      s2 += a2 / (-d);
    }
    cd.alpha[p] = 1.0 - s1;
    cd.alpha_alt[p] = 1.0 + s2;
    // computable surrogate for the neglected q >= P contribution: twice the
    // last retained term's magnitude (the true constants are nonconstructive)
    if (P >= 2) {
      const int qe = (p == P - 1) ? P - 2 : P - 1;
      cd.tail_bound[p] =
          2.0 * cd.at(p, qe) * cd.at(p, qe) / std::abs(basis.E[qe] - basis.E[p] + 1e-300);
    }
    cd.trusted[p] = (p <= P - 5) ? 1 : 0;
  }
  return cd;
}

ModeSet apply_A0(const ModeSet& m, const std::vector<double>& alpha) {
  if ((int)alpha.size() < m.P) throw Error("apply_A0: alpha shorter than mode count");
  ModeSet out = m;
  fourier_xy(out, -1);
  const int nx = out.g2.nx, ny = out.g2.ny;
  for (int p = 0; p < out.P; ++p)
    for (int i = 0; i < nx; ++i) {
      const double w = alpha[p] * out.g2.xi[i] * out.g2.xi[i];
      for (int j = 0; j < ny; ++j) out.phi[p][(std::size_t)i * ny + j] *= w;
    }
  fourier_xy(out, +1);
  return out;
}

ModeSet oscillatory_a(double tau, const ModeSet& m, const CouplingData& cd,
                      const std::vector<double>& E) {
  if (cd.P != m.P) throw Error("oscillatory_a: size mismatch");
  const int nx = m.g2.nx, ny = m.g2.ny, P = m.P;
  // dphi_q = i d_x phi_q, spectrally
  ModeSet dphi = m;
  fourier_xy(dphi, -1);
  for (int p = 0; p < P; ++p)
    for (int i = 0; i < nx; ++i) {
      const cplx w = cplx(0.0, 1.0) * cplx(0.0, m.g2.xi[i]);  // i * (i xi)
      for (int j = 0; j < ny; ++j) dphi.phi[p][(std::size_t)i * ny + j] *= w;
    }
  fourier_xy(dphi, +1);
  ModeSet out = ModeSet::make(m.g2, P);
  out.t = m.t;
  for (int p = 0; p < P; ++p)
    for (int q = 0; q < P; ++q) {
      if (q == p || cd.at(p, q) == 0.0) continue;
      const double ph = tau * (E[p] - E[q]);
      const cplx c = -cd.at(p, q) * cplx(std::cos(ph), std::sin(ph));
      const auto& src = dphi.phi[q];
      auto& dst = out.phi[p];
      for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += c * src[k];
    }
  return out;
}

std::vector<double> second_order_average(const CouplingData& cd, const std::vector<double>& E) {
  // Compose the antiderivative-weighted operator with the oscillatory one and
  // keep the resonant (q -> p -> q) part; the -d_x^2 coefficient on mode p is
  // 1 + sum_{q != p} a_pq a_qp / (E_p - E_q), which must reproduce alpha_p.
  const int P = cd.P;
  std::vector<double> disc(P, 0.0);
  for (int p = 0; p < P; ++p) {
    double c = 1.0;
    for (int q = 0; q < P; ++q) {
      if (q == p) continue;
      c += cd.at(p, q) * cd.at(q, p) / (E[p] - E[q]);
    }
    disc[p] = c - cd.alpha[p];
  }
  return disc;
}

DispersionProbe dispersion_check(const Potential& pot, double eps,
                                 const std::vector<double>& xi_probe,
                                 const EigenBasis& basis, const CouplingData& cd) {
  DispersionProbe probe;
  probe.eps = eps;
  probe.xi = xi_probe;
  const int P = basis.P, nz = basis.grid.nz;
  probe.lambda.assign(xi_probe.size() * P, 0.0);
  probe.curvature.assign(P, 0.0);
  std::vector<double> W(nz), lamP, lamM, chi;
  for (std::size_t ix = 0; ix < xi_probe.size(); ++ix) {
    const double xi = xi_probe[ix];
    for (int sgn = 0; sgn < 2; ++sgn) {
      const double k = (sgn == 0 ? 1.0 : -1.0) * eps * xi;
      for (int j = 0; j < nz; ++j) {
        const double bz = k + pot.B * basis.grid.z[j];
        W[j] = pot.Vc[j] + bz * bz;
      }
      solve_eigs_raw(W, basis.grid, P, sgn == 0 ? lamP : lamM, chi);
    }
    for (int p = 0; p < P; ++p) {
      probe.lambda[ix * P + p] = lamP[p];
      // symmetric difference cancels odd-in-xi terms
      probe.curvature[p] += (lamP[p] + lamM[p] - 2.0 * basis.E[p]) /
                            (2.0 * eps * eps * xi * xi) / double(xi_probe.size());
    }
  }
  for (int p = 0; p < P; ++p)
    if (cd.trusted[p])
      probe.max_dev = std::max(probe.max_dev, std::abs(probe.curvature[p] - cd.alpha[p]));
  return probe;
}

}  // namespace cyqw
