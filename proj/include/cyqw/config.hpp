#pragma once

#include <string>
#include <vector>

#include "cyqw/full_solver.hpp"
#include "cyqw/potential.hpp"

namespace cyqw {

/// Run configuration parsed from an INI-style file with sections
/// [potential] [grids] [epsilon] [time] [solver] [io] [init].
/// Unknown sections or keys are rejected with the constraint text.
struct RunConfig {
  // potential
  PotentialSpec pot;
  // grids
  int nx = 64, ny = 64, nz = 512;
  double Lx = 16.0, Ly = 16.0, Lz = 12.0;
  int P = 0;   // 0 = auto (smallest P with E_{P-1} >= 20 E_0)
  int Pz = 12; // per-wavevector mode count of the full solver
  // epsilon
  std::vector<double> eps_list{0.1};
  // time
  double T = 1.0, dt = 1e-3, snap_dt = 0.1;
  // solver
  Nonlin nonlinearity = Nonlin::F1;
  double guard_factor = 1e3;
  double tail_threshold = 1e-6;
  bool override_negative_alpha = false;
  // io
  std::string out_dir = "out";
  std::string prefix = "run";
  // init: Gaussian envelope exp(-(x-x0)^2/(2 sx^2) - (y-y0)^2/(2 sy^2))
  //       * exp(i(kx x + ky y)) * sum_p zmode_coeff[p] chi_p(z)
  double sx = 1.0, sy = 1.0, x0 = 0.0, y0 = 0.0, kx = 0.0, ky = 0.0;
  std::vector<std::pair<int, double>> zmodes{{0, 1.0}};
  bool normalize = true;
};

RunConfig parse_config(const std::string& path);

/// Build the configured initial datum on the given grids/basis.
Field3D build_initial_datum(const RunConfig& cfg, const Grid2D& g2, const EigenBasis& basis);

}  // namespace cyqw
