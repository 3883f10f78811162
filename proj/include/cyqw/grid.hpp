#pragma once

#include <vector>

#include "cyqw/common.hpp"

namespace cyqw {

/// Uniform symmetric z grid: z_j = -L_z + j*dz, j = 0..n_z-1, dz = 2 L_z / n_z.
/// The right endpoint +L_z is not stored; Dirichlet conditions live at both
/// +/- L_z.  Under z -> -z the interior nodes map onto each other exactly
/// (j <-> n_z - j); only j = 0 is unpaired.
struct Grid1D {
  double Lz = 0.0;
  int nz = 0;
  double dz = 0.0;
  std::vector<double> z;

  static Grid1D make(double Lz, int nz);
};

/// Periodic (x,y) box, cell-centered-at-left sampling x_i = -L_x/2 + i*dx.
/// Wavevectors xi_k = 2 pi k~ / L_x with the usual negative-frequency wrap.
struct Grid2D {
  double Lx = 0.0, Ly = 0.0;
  int nx = 0, ny = 0;
  double dx = 0.0, dy = 0.0;
  std::vector<double> x, y;
  std::vector<double> xi, eta;

  static Grid2D make(double Lx, double Ly, int nx, int ny);
};

bool is_pow2(int n);

}  // namespace cyqw
