#include "cyqw/grid.hpp"

namespace cyqw {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

Grid1D Grid1D::make(double Lz, int nz) {
  if (Lz <= 0.0 || nz < 8) throw Error("Grid1D: need Lz > 0 and nz >= 8");
  Grid1D g;
  g.Lz = Lz;
  g.nz = nz;
  g.dz = 2.0 * Lz / nz;
  g.z.resize(nz);
  for (int j = 0; j < nz; ++j) g.z[j] = -Lz + j * g.dz;
  return g;
}

Grid2D Grid2D::make(double Lx, double Ly, int nx, int ny) {
  if (!is_pow2(nx) || !is_pow2(ny))
    throw Error("Grid2D: nx, ny must be powers of two");
  if (Lx <= 0.0 || Ly <= 0.0) throw Error("Grid2D: box lengths must be positive");
  Grid2D g;
  g.Lx = Lx;
  g.Ly = Ly;
  g.nx = nx;
  g.ny = ny;
  g.dx = Lx / nx;
  g.dy = Ly / ny;
  g.x.resize(nx);
  g.y.resize(ny);
  g.xi.resize(nx);
  g.eta.resize(ny);
  for (int i = 0; i < nx; ++i) {
    g.x[i] = -0.5 * Lx + i * g.dx;
    const int k = (i < nx / 2) ? i : i - nx;
    g.xi[i] = 2.0 * kPi * k / Lx;
  }
  for (int j = 0; j < ny; ++j) {
    g.y[j] = -0.5 * Ly + j * g.dy;
    const int l = (j < ny / 2) ? j : j - ny;
    g.eta[j] = 2.0 * kPi * l / Ly;
  }
  return g;
}

}  // namespace cyqw
