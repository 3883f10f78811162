#include "cyqw/limit_solver.hpp"

#include <cmath>

#include "cyqw/reference.hpp"

namespace cyqw {

ModeSet init_modes(const Field3D& psi0, const EigenBasis& basis, double tail_threshold) {
  double tail = 0.0;
  Field3D fm = project_modes(psi0, basis, &tail);
  if (tail > tail_threshold)
    throw Error("init_modes: mode-truncation tail " + std::to_string(tail) +
                " exceeds threshold; increase P");
  ModeSet m = ModeSet::make(psi0.g2, basis.P);
  const int nx = psi0.g2.nx, ny = psi0.g2.ny;
  for (int p = 0; p < basis.P; ++p)
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < ny; ++j)
        m.phi[p][(std::size_t)i * ny + j] = fm.at(i, j, p);
  return m;
}

void step_limit(ModeSet& m, double dt, const std::vector<double>& alpha,
                const KernelMultiplier& K2, bool use_W) {
  if ((int)alpha.size() < m.P) throw Error("step_limit: alpha shorter than mode count");
  fourier_xy(m, -1);
  kinetic_phase(m, alpha, 0.5 * dt);
  fourier_xy(m, +1);
  if (use_W) {
    const std::vector<double> W = selfconsistent_W(m, K2);
#pragma omp parallel for schedule(static)
    for (int p = 0; p < m.P; ++p)
      for (std::size_t k = 0; k < W.size(); ++k)
        m.phi[p][k] *= cplx(std::cos(dt * W[k]), -std::sin(dt * W[k]));
  }
  fourier_xy(m, -1);
  kinetic_phase(m, alpha, 0.5 * dt);
  fourier_xy(m, +1);
  m.t += dt;
}

LimitEnergies energies(const ModeSet& m, const EigenBasis& basis,
                       const std::vector<double>& alpha, const KernelMultiplier& K2,
                       bool use_W) {
  LimitEnergies e;
  const int nx = m.g2.nx, ny = m.g2.ny;
  const double dA = m.g2.dx * m.g2.dy;
  e.mode_mass.assign(m.P, 0.0);
  std::vector<double> econf_terms(m.P), kx_terms(m.P), ky_terms(m.P);
  ModeSet mh = m;
  fourier_xy(mh, -1);
  for (int p = 0; p < m.P; ++p) {
    double mu = 0.0, kx = 0.0, ky = 0.0;
    for (int i = 0; i < nx; ++i) {
      const double xi2 = m.g2.xi[i] * m.g2.xi[i];
      for (int j = 0; j < ny; ++j) {
        const double c = std::norm(mh.phi[p][(std::size_t)i * ny + j]);
        mu += c;
        kx += xi2 * c;
        ky += m.g2.eta[j] * m.g2.eta[j] * c;
      }
    }
    e.mode_mass[p] = mu * dA;  // Parseval: same as the real-space mass
    econf_terms[p] = basis.E[p] * e.mode_mass[p];
    kx_terms[p] = alpha[p] * kx * dA;
    ky_terms[p] = ky * dA;
  }
  e.Econf = pairwise_sum(econf_terms);
  e.Ekin_x = pairwise_sum(kx_terms);
  e.Ekin_y = pairwise_sum(ky_terms);
  if (use_W) {
    const std::vector<double> W = selfconsistent_W(m, K2);
    std::vector<double> rho((std::size_t)nx * ny, 0.0);
    for (int p = 0; p < m.P; ++p)
      for (std::size_t k = 0; k < rho.size(); ++k) rho[k] += std::norm(m.phi[p][k]);
    std::vector<double> terms(rho.size());
    for (std::size_t k = 0; k < rho.size(); ++k) terms[k] = W[k] * rho[k];
    e.Epot = 0.5 * pairwise_sum(terms) * dA;
  }
  e.Etr = e.Ekin_x + e.Ekin_y + e.Epot;
  return e;
}

LimitTrajectory evolve_limit(const ModeSet& m0, const EigenBasis& basis,
                             const std::vector<double>& alpha, const KernelMultiplier& K2,
                             const LimitRunConfig& cfg) {
  for (int p = 0; p < m0.P; ++p)
    if (alpha[p] <= 0.0 && !cfg.override_negative_alpha)
      throw Error("evolve_limit: non-positive alpha_" + std::to_string(p) +
                  " makes the transport symbol ill-posed; pass the override to proceed");
  LimitTrajectory tr;
  ModeSet m = m0;
  const long long nsteps = std::llround(cfg.T / cfg.dt);
  const long long every = std::max<long long>(1, std::llround(cfg.snap_dt / cfg.dt));
  const double b1_0 = bm_norm(m, 1, basis.E);

  auto record = [&](const ModeSet& s) {
    tr.times.push_back(s.t);
    tr.snaps.push_back(s);
    const LimitEnergies e = energies(s, basis, alpha, K2, cfg.use_W);
    tr.diag.t.push_back(s.t);
    tr.diag.mass.push_back(l2_norm(s));
    tr.diag.mode_mass.push_back(e.mode_mass);
    tr.diag.Econf.push_back(e.Econf);
    tr.diag.Etr.push_back(e.Etr);
    tr.diag.Ekin_x.push_back(e.Ekin_x);
    tr.diag.Ekin_y.push_back(e.Ekin_y);
    tr.diag.Epot.push_back(e.Epot);
  };
  record(m);
  for (long long k = 1; k <= nsteps; ++k) {
    step_limit(m, cfg.dt, alpha, K2, cfg.use_W);
    if (k % every == 0 || k == nsteps) {
      bool bad = false;
      for (int p = 0; p < m.P && !bad; ++p)
        for (const cplx& c : m.phi[p])
          if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) { bad = true; break; }
      if (bad) {
        tr.halt = "NaN at step " + std::to_string(k);
        return tr;
      }
      if (bm_norm(m, 1, basis.E) > cfg.guard_factor * b1_0) {
        record(m);
        tr.halt = "possible T_max reached (B^1 guard at step " + std::to_string(k) + ")";
        return tr;
      }
      record(m);
    }
  }
  return tr;
}

}  // namespace cyqw
