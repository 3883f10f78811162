#include "cyqw/norms.hpp"

#include <cmath>

namespace cyqw {

double l2_norm(const Field3D& f) {
  const long long bad = f.first_bad_index();
  if (bad >= 0)
    throw Error("l2_norm: non-finite value at flat index " + std::to_string(bad));
  const int nx = f.g2.nx, ny = f.g2.ny, nzp = f.nzp;
  std::vector<double> part(nx, 0.0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nx; ++i) {
    double s = 0.0;
    const cplx* row = &f.v[(std::size_t)i * ny * nzp];
    for (int j = 0; j < ny * nzp; ++j) s += std::norm(row[j]);
    part[i] = s;
  }
  return std::sqrt(pairwise_sum(part) * f.dvol());
}

double l2_norm(const ModeSet& m) {
  std::vector<double> part(m.P, 0.0);
  for (int p = 0; p < m.P; ++p) {
    double s = 0.0;
    for (const cplx& c : m.phi[p]) s += std::norm(c);
    part[p] = s;
  }
  return std::sqrt(pairwise_sum(part) * m.g2.dx * m.g2.dy);
}

BmResult bm_norm_full(const Field3D& f, int m, const EigenBasis& basis) {
  if (m < 0 || m > 8) throw Error("bm_norm: Sobolev index out of supported range [0,8]");
  BmResult r;
  if (m == 0) {
    r.value = l2_norm(f);
    return r;
  }
  Field3D g = (f.repr == Repr::GridZ) ? project_modes(f, basis, &r.tail_frac) : f;
  r.warn = r.tail_frac > 1e-6;
  fourier_xy(g, -1);
  const int nx = g.g2.nx, ny = g.g2.ny, P = g.nzp;
  std::vector<double> part(nx, 0.0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nx; ++i) {
    const double xi2 = g.g2.xi[i] * g.g2.xi[i];
    double s = 0.0;
    for (int j = 0; j < ny; ++j) {
      const double k2 = xi2 + g.g2.eta[j] * g.g2.eta[j];
      const double km = std::pow(k2, m);
      for (int p = 0; p < P; ++p)
        s += (1.0 + km + std::pow(basis.E[p], m)) * std::norm(g.at(i, j, p));
    }
    part[i] = s;
  }
  r.value = std::sqrt(pairwise_sum(part) * g.g2.dx * g.g2.dy);
  return r;
}

double bm_norm(const Field3D& f, int m, const EigenBasis& basis) {
  return bm_norm_full(f, m, basis).value;
}

double bm_norm(const ModeSet& ms, int m, const std::vector<double>& E) {
  if (m < 0 || m > 8) throw Error("bm_norm: Sobolev index out of supported range [0,8]");
  ModeSet g = ms;
  fourier_xy(g, -1);
  const int nx = g.g2.nx, ny = g.g2.ny;
  std::vector<double> part(g.P, 0.0);
  for (int p = 0; p < g.P; ++p) {
    const double Em = (m == 0) ? 0.0 : std::pow(E[p], m);
    double s = 0.0;
    for (int i = 0; i < nx; ++i) {
      const double xi2 = g.g2.xi[i] * g.g2.xi[i];
      for (int j = 0; j < ny; ++j) {
        const double k2 = xi2 + g.g2.eta[j] * g.g2.eta[j];
        const double km = (m == 0) ? 0.0 : std::pow(k2, m);
        s += (1.0 + km + Em) * std::norm(g.phi[p][(std::size_t)i * ny + j]);
      }
    }
    part[p] = s;
  }
  return std::sqrt(pairwise_sum(part) * g.g2.dx * g.g2.dy);
}

}  // namespace cyqw
