#include "cyqw/full_solver.hpp"

#include <cmath>

#include "cyqw/fft.hpp"

namespace cyqw {

cplx eigenphase(double t, double E, double eps) {
  long double th = -(long double)t * (long double)E / ((long double)eps * (long double)eps);
  th = std::fmod(th, 2.0L * (long double)kPi);
  return cplx((double)std::cos(th), (double)std::sin(th));
}

ShiftedBasisTable build_shifted_table(const Potential& pot, double eps, const Grid2D& g2,
                                      const Grid1D& g1, int Pz) {
  ShiftedBasisTable tab;
  tab.eps = eps;
  tab.Pz = Pz;
  tab.g2 = g2;
  tab.g1 = g1;
  const int nx = g2.nx, nz = g1.nz;
  tab.lambda.assign((std::size_t)nx * Pz, 0.0);
  tab.chi.assign(((std::size_t)nx * Pz) * nz, 0.0);
  double worst_margin = g1.Lz;
  std::string fail;
#pragma omp parallel for schedule(dynamic) shared(fail)
  for (int i = 0; i < nx; ++i) {
    try {
      const double k = eps * g2.xi[i];
      std::vector<double> W(nz), E, chi;
      for (int j = 0; j < nz; ++j) {
        const double bz = k + pot.B * g1.z[j];
        W[j] = pot.Vc[j] + bz * bz;
      }
      solve_eigs_raw(W, g1, Pz, E, chi);
      for (int p = 0; p < Pz; ++p) tab.lambda[(std::size_t)i * Pz + p] = E[p];
      std::copy(chi.begin(), chi.end(), tab.chi.begin() + ((std::size_t)i * Pz) * nz);
    } catch (const std::exception& ex) {
#pragma omp critical
      fail = "build_shifted_table: xi index " + std::to_string(i) + ": " + ex.what();
    }
  }
  if (!fail.empty()) throw Error(fail);
  // audit: how close the shifted potential well sits to the box edge
  if (pot.B > 0.0) {
    for (int i = 0; i < nx; ++i) {
      const double zmin = -eps * g2.xi[i] * pot.B /
                          std::max(pot.B * pot.B + (pot.audit.a_fit * pot.audit.a_fit), 1e-300);
      worst_margin = std::min(worst_margin, g1.Lz - std::abs(zmin));
    }
  }
  tab.min_shift_margin = worst_margin;
  tab.fingerprint = fnv1a(tab.lambda, fnv1a(tab.chi));
  return tab;
}

namespace {

// Exact linear flow over time dt: in (xi,eta) Fourier space, expand each z
// column in the per-xi eigenbasis and advance the eigenphases.
void linear_flow(Field3D& f, const ShiftedBasisTable& tab, double dt) {
  const int nx = f.g2.nx, ny = f.g2.ny, nz = f.nzp, Pz = tab.Pz;
  const double dz = tab.g1.dz;
  const double ie2 = 1.0 / (tab.eps * tab.eps);
  fourier_xy(f, -1);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nx; ++i) {
    std::vector<cplx> c(Pz);
    for (int j = 0; j < ny; ++j) {
      const double eta2 = f.g2.eta[j] * f.g2.eta[j];
      cplx* col = &f.at(i, j, 0);
      for (int p = 0; p < Pz; ++p) {
        const double* ch = tab.mode(i, p);
        cplx s(0.0, 0.0);
        for (int k = 0; k < nz; ++k) s += col[k] * ch[k];
        const double w = dt * (tab.lambda[(std::size_t)i * Pz + p] * ie2 + eta2);
        c[p] = s * dz * cplx(std::cos(w), -std::sin(w));
      }
      for (int k = 0; k < nz; ++k) col[k] = cplx(0.0, 0.0);
      for (int p = 0; p < Pz; ++p) {
        const double* ch = tab.mode(i, p);
        const cplx a = c[p];
        for (int k = 0; k < nz; ++k) col[k] += a * ch[k];
      }
    }
  }
  fourier_xy(f, +1);
}

std::vector<double> potential_field(const Field3D& f, Nonlin nl, const KernelMultiplier* K) {
  const int nx = f.g2.nx, ny = f.g2.ny, nz = f.nzp;
  std::vector<double> V;
  if (nl == Nonlin::F1) {
    if (!K || K->tag != KernelMultiplier::Tag::K3D)
      throw Error("step_full: F1 needs a 3D kernel");
    std::vector<double> rho(f.v.size());
    for (std::size_t k = 0; k < rho.size(); ++k) rho[k] = std::norm(f.v[k]);
    V = conv3d(rho, *K, nx, ny, nz);
  } else if (nl == Nonlin::F0) {
    if (!K || K->tag != KernelMultiplier::Tag::K2D)
      throw Error("step_full: F0 needs a 2D kernel");
    std::vector<double> rho((std::size_t)nx * ny, 0.0);
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < ny; ++j) {
        double s = 0.0;
        const cplx* col = &f.at(i, j, 0);
        for (int k = 0; k < nz; ++k) s += std::norm(col[k]);
        rho[(std::size_t)i * ny + j] = s * f.zgrid.dz;
      }
    const std::vector<double> W = conv2d(rho, *K, nx, ny);
    V.resize(f.v.size());
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < ny; ++j)
        for (int k = 0; k < nz; ++k)
          V[((std::size_t)i * ny + j) * nz + k] = W[(std::size_t)i * ny + j];
  }
  return V;
}

}  // namespace

void step_full(Field3D& f, const ShiftedBasisTable& tab, double dt, Nonlin nl,
               const KernelMultiplier* K) {
  if (f.repr != Repr::GridZ) throw Error("step_full: field must be grid-z");
  linear_flow(f, tab, nl == Nonlin::None ? dt : 0.5 * dt);
  if (nl != Nonlin::None) {
    const std::vector<double> V = potential_field(f, nl, K);
#pragma omp parallel for schedule(static)
    for (long long k = 0; k < (long long)f.v.size(); ++k)
      f.v[k] *= cplx(std::cos(dt * V[k]), -std::sin(dt * V[k]));
    linear_flow(f, tab, 0.5 * dt);
  }
}

double full_energy(const Field3D& f, const ShiftedBasisTable& tab, Nonlin nl,
                   const KernelMultiplier* K) {
  const int nx = f.g2.nx, ny = f.g2.ny, nz = f.nzp, Pz = tab.Pz;
  const double dz = tab.g1.dz;
  const double ie2 = 1.0 / (tab.eps * tab.eps);
  Field3D g = f;
  fourier_xy(g, -1);
  std::vector<double> part(nx, 0.0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nx; ++i) {
    double s = 0.0;
    for (int j = 0; j < ny; ++j) {
      const double eta2 = g.g2.eta[j] * g.g2.eta[j];
      const cplx* col = &g.at(i, j, 0);
      for (int p = 0; p < Pz; ++p) {
        const double* ch = tab.mode(i, p);
        cplx c(0.0, 0.0);
        for (int k = 0; k < nz; ++k) c += col[k] * ch[k];
        c *= dz;
        s += (tab.lambda[(std::size_t)i * Pz + p] * ie2 + eta2) * std::norm(c);
      }
    }
    part[i] = s;
  }
  double E = pairwise_sum(part) * g.g2.dx * g.g2.dy;
  if (nl != Nonlin::None) {
    const std::vector<double> V = potential_field(f, nl, K);
    std::vector<double> vt(nx, 0.0);
    for (int i = 0; i < nx; ++i) {
      double s = 0.0;
      const std::size_t off = (std::size_t)i * ny * nz;
      for (int k = 0; k < ny * nz; ++k) s += V[off + k] * std::norm(f.v[off + k]);
      vt[i] = s;
    }
    E += 0.5 * pairwise_sum(vt) * f.dvol();
  }
  return E;
}

FullTrajectory evolve_full(const Field3D& psi0, const ShiftedBasisTable& tab, double T,
                           double dt, double snap_dt, Nonlin nl, const KernelMultiplier* K) {
  FullTrajectory tr;
  Field3D f = psi0;
  double t = 0.0;
  const long long nsteps = std::llround(T / dt);
  const long long every = std::max<long long>(1, std::llround(snap_dt / dt));
  auto record = [&]() {
    tr.times.push_back(t);
    tr.snaps.push_back(f);
    tr.mass.push_back(l2_norm(f));
    tr.energy.push_back(full_energy(f, tab, nl, K));
  };
  if (f.first_bad_index() >= 0) {
    tr.halt = "NaN at step 0";
    return tr;
  }
  record();
  for (long long k = 1; k <= nsteps; ++k) {
    step_full(f, tab, dt, nl, K);
    t = k * dt;
    if (k % every == 0 || k == nsteps) {
      if (f.first_bad_index() >= 0) {
        tr.halt = "NaN at step " + std::to_string(k);
        return tr;
      }
      record();
    }
  }
  return tr;
}

Field3D analytic_harmonic_benchmark(const Field3D& psi0, double a, double B, double eps,
                                    double t, const EigenBasis& basis) {
  if (psi0.repr != Repr::GridZ) throw Error("analytic_harmonic_benchmark: grid-z input");
  const int nx = psi0.g2.nx, ny = psi0.g2.ny, nz = psi0.nzp;
  const double om2 = a * a + B * B;
  const double alpha_t = a * a / om2;
  const double Lz = psi0.zgrid.Lz;
  Field3D f = psi0;

  // x Fourier transform (axis 0, stride ny*nz)
  fft1_outer_batch(f.v.data(), nx, ny * nz, -1);

  // box-margin guard: wavevectors shifted past Lz/4 must carry no mass
  {
    double tot = 0.0, badmass = 0.0;
    for (int i = 0; i < nx; ++i) {
      const double delta = B * eps * f.g2.xi[i] / om2;
      double m = 0.0;
      const cplx* row = &f.v[(std::size_t)i * ny * nz];
      for (int k = 0; k < ny * nz; ++k) m += std::norm(row[k]);
      tot += m;
      if (std::abs(delta) > 0.25 * Lz) badmass += m;
    }
    if (badmass > 1e-16 * tot)
      throw Error("analytic_harmonic_benchmark: z-shift exceeds box margin on populated modes");
  }

  auto z_shift = [&](double sign) {
    fft1_inner_batch(f.v.data(), nz, nx * ny, -1);
    for (int i = 0; i < nx; ++i) {
      const double delta = sign * B * eps * f.g2.xi[i] / om2;
      for (int j = 0; j < ny; ++j) {
        cplx* col = &f.at(i, j, 0);
        for (int k = 0; k < nz; ++k) {
          const int kw = (k < nz / 2) ? k : k - nz;
          const double kz = kPi * kw / Lz;  // 2 pi kw / (2 Lz)
          col[k] *= cplx(std::cos(kz * delta), std::sin(kz * delta));
        }
      }
    }
    fft1_inner_batch(f.v.data(), nz, nx * ny, +1);
  };

  // The shifted well sits at z = -delta, so its eigenfunctions are
  // chi_p(z + delta): translate the state by -delta, work in the unshifted
  // basis, translate back at the end.
  z_shift(-1.0);

  // y Fourier transform per x-slab, then the free anisotropic propagator
  for (int i = 0; i < nx; ++i)
    fft1_outer_batch(f.v.data() + (std::size_t)i * ny * nz, ny, nz, -1);
  for (int i = 0; i < nx; ++i) {
    const double xi2 = f.g2.xi[i] * f.g2.xi[i];
    for (int j = 0; j < ny; ++j) {
      const double w = t * (alpha_t * xi2 + f.g2.eta[j] * f.g2.eta[j]);
      const cplx ph(std::cos(w), -std::sin(w));
      cplx* col = &f.at(i, j, 0);
      for (int k = 0; k < nz; ++k) col[k] *= ph;
    }
  }

  // confinement eigenphases e^{-i t E_p / eps^2} in the computed basis
  {
    const int P = basis.P;
    std::vector<cplx> ph(P);
    for (int p = 0; p < P; ++p) ph[p] = eigenphase(t, basis.E[p], eps);
    const double dz = basis.grid.dz;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < nx; ++i) {
      std::vector<cplx> c(P);
      for (int j = 0; j < ny; ++j) {
        cplx* col = &f.at(i, j, 0);
        for (int p = 0; p < P; ++p) {
          const double* ch = basis.mode(p);
          cplx s(0.0, 0.0);
          for (int k = 0; k < nz; ++k) s += col[k] * ch[k];
          c[p] = s * dz * ph[p];
        }
        for (int k = 0; k < nz; ++k) col[k] = cplx(0.0, 0.0);
        for (int p = 0; p < P; ++p) {
          const double* ch = basis.mode(p);
          const cplx a = c[p];
          for (int k = 0; k < nz; ++k) col[k] += a * ch[k];
        }
      }
    }
  }

  for (int i = 0; i < nx; ++i)
    fft1_outer_batch(f.v.data() + (std::size_t)i * ny * nz, ny, nz, +1);
  z_shift(+1.0);
  fft1_outer_batch(f.v.data(), nx, ny * nz, +1);
  return f;
}

ErrorCurve theorem_error(const std::vector<Field3D>& full_snaps,
                         const std::vector<ModeSet>& limit_snaps,
                         const std::vector<double>& times, const EigenBasis& basis,
                         double eps) {
  if (full_snaps.size() != limit_snaps.size() || full_snaps.size() != times.size())
    throw Error("theorem_error: snapshot count mismatch");
  ErrorCurve ec;
  for (std::size_t s = 0; s < times.size(); ++s) {
    const double t = times[s];
    const ModeSet& m = limit_snaps[s];
    Field3D d = project_modes(full_snaps[s], basis);
    const int nx = d.g2.nx, ny = d.g2.ny;
    for (int p = 0; p < m.P && p < basis.P; ++p) {
      const cplx ph = eigenphase(t, basis.E[p], eps);
      for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
          d.at(i, j, p) -= ph * m.phi[p][(std::size_t)i * ny + j];
    }
    const double e = bm_norm(d, 1, basis);
    ec.t.push_back(t);
    ec.e.push_back(e);
    ec.sup = std::max(ec.sup, e);
  }
  return ec;
}

}  // namespace cyqw
