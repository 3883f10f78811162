#include "cyqw/reference.hpp"

#include <cmath>

namespace cyqw {

Field3D project_modes_serial(const Field3D& f, const EigenBasis& basis) {
  if (f.repr != Repr::GridZ) throw Error("project_modes_serial: field must be grid-z");
  const int nx = f.g2.nx, ny = f.g2.ny, nz = f.nzp, P = basis.P;
  Field3D out = Field3D::make(Repr::ModeZ, f.g2, basis.grid, P);
  const double dz = basis.grid.dz;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      const cplx* col = &f.at(i, j, 0);
      for (int p = 0; p < P; ++p) {
        const double* c = basis.mode(p);
        cplx s(0.0, 0.0);
        for (int k = 0; k < nz; ++k) s += col[k] * c[k];
        out.at(i, j, p) = s * dz;
      }
    }
  return out;
}

Field3D synth_modes_serial(const Field3D& f, const EigenBasis& basis) {
  if (f.repr != Repr::ModeZ) throw Error("synth_modes_serial: field must be mode-z");
  const int nx = f.g2.nx, ny = f.g2.ny, nz = basis.grid.nz, P = basis.P;
  Field3D out = Field3D::make(Repr::GridZ, f.g2, basis.grid, nz);
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

std::vector<double> conv2d_direct(const std::vector<double>& rho, const KernelMultiplier& K,
                                  int nx, int ny) {
  if (K.table.empty()) throw Error("conv2d_direct: kernel built without real-space table");
  std::vector<double> out((std::size_t)nx * ny, 0.0);
  const double dA = K.dx * K.dy;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      double s = 0.0;
      for (int i2 = 0; i2 < nx; ++i2) {
        const int di = ((i - i2) % K.pnx + K.pnx) % K.pnx;
        for (int j2 = 0; j2 < ny; ++j2) {
          const int dj = ((j - j2) % K.pny + K.pny) % K.pny;
          s += K.table[(std::size_t)di * K.pny + dj] * rho[(std::size_t)i2 * ny + j2];
        }
      }
      out[(std::size_t)i * ny + j] = s * dA;
    }
  return out;
}

std::vector<double> conv3d_direct(const std::vector<double>& rho, const KernelMultiplier& K,
                                  int nx, int ny, int nz) {
  if (K.table.empty()) throw Error("conv3d_direct: kernel built without real-space table");
  std::vector<double> out((std::size_t)nx * ny * nz, 0.0);
  const double dV = K.dx * K.dy * K.dz;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      for (int k = 0; k < nz; ++k) {
        double s = 0.0;
        for (int i2 = 0; i2 < nx; ++i2) {
          const int di = ((i - i2) % K.pnx + K.pnx) % K.pnx;
          for (int j2 = 0; j2 < ny; ++j2) {
            const int dj = ((j - j2) % K.pny + K.pny) % K.pny;
            for (int k2 = 0; k2 < nz; ++k2) {
              const int dk = ((k - k2) % K.pnz + K.pnz) % K.pnz;
              s += K.table[((std::size_t)di * K.pny + dj) * K.pnz + dk] *
                   rho[((std::size_t)i2 * ny + j2) * nz + k2];
            }
          }
        }
        out[((std::size_t)i * ny + j) * nz + k] = s * dV;
      }
  return out;
}

void kinetic_phase(ModeSet& mhat, const std::vector<double>& alpha, double dt) {
  const int nx = mhat.g2.nx, ny = mhat.g2.ny;
#pragma omp parallel for schedule(static)
  for (int p = 0; p < mhat.P; ++p)
    for (int i = 0; i < nx; ++i) {
      const double xi2 = mhat.g2.xi[i] * mhat.g2.xi[i];
      for (int j = 0; j < ny; ++j) {
        const double w = dt * (alpha[p] * xi2 + mhat.g2.eta[j] * mhat.g2.eta[j]);
        mhat.phi[p][(std::size_t)i * ny + j] *= cplx(std::cos(w), -std::sin(w));
      }
    }
}

void kinetic_phase_serial(ModeSet& mhat, const std::vector<double>& alpha, double dt) {
  const int nx = mhat.g2.nx, ny = mhat.g2.ny;
  for (int p = 0; p < mhat.P; ++p)
    for (int i = 0; i < nx; ++i) {
      const double xi2 = mhat.g2.xi[i] * mhat.g2.xi[i];
      for (int j = 0; j < ny; ++j) {
        const double w = dt * (alpha[p] * xi2 + mhat.g2.eta[j] * mhat.g2.eta[j]);
        mhat.phi[p][(std::size_t)i * ny + j] *= cplx(std::cos(w), -std::sin(w));
      }
    }
}

}  // namespace cyqw
