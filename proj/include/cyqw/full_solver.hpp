#pragma once

#include <string>
#include <vector>

#include "cyqw/field.hpp"
#include "cyqw/norms.hpp"
#include "cyqw/poisson.hpp"
#include "cyqw/potential.hpp"
#include "cyqw/spectrum.hpp"

namespace cyqw {

enum class Nonlin { None, F0, F1 };

/// Per-x-wavevector eigenpairs of -d_z^2 + V_c(z) + (eps xi + B z)^2, the
/// x-Fourier symbol of the full Hamiltonian.  Diagonalizing per xi makes the
/// stiff 1/eps^2 linear flow exact (no CFL restriction in eps).
struct ShiftedBasisTable {
  double eps = 0.0;
  int Pz = 0;
  Grid2D g2;
  Grid1D g1;
  std::vector<double> lambda;  // [i * Pz + p]
  std::vector<double> chi;     // [(i * Pz + p) * nz + j]
  double min_shift_margin = 0.0;  // box margin left of the shifted potential well
  std::uint64_t fingerprint = 0;

  const double* mode(int i, int p) const {
    return chi.data() + ((std::size_t)i * Pz + p) * g1.nz;
  }
};

ShiftedBasisTable build_shifted_table(const Potential& pot, double eps, const Grid2D& g2,
                                      const Grid1D& g1, int Pz);

/// One Strang step of the full model: exact linear half-flow (per-(xi,eta)
/// eigenphases), full potential substep e^{-i dt V}, exact linear half-flow.
void step_full(Field3D& f, const ShiftedBasisTable& tab, double dt, Nonlin nl,
               const KernelMultiplier* K);

/// Discrete total energy: sum (lambda_p(xi)/eps^2 + eta^2) |c_p(xi,eta)|^2
/// + (1/2) int V |psi|^2 (the linear part is conserved exactly by the linear
/// flow, so drift measures only the splitting error).
double full_energy(const Field3D& f, const ShiftedBasisTable& tab, Nonlin nl,
                   const KernelMultiplier* K);

struct FullTrajectory {
  std::vector<double> times;
  std::vector<Field3D> snaps;
  std::vector<double> mass, energy;
  std::string halt;
};

FullTrajectory evolve_full(const Field3D& psi0, const ShiftedBasisTable& tab, double T,
                           double dt, double snap_dt, Nonlin nl, const KernelMultiplier* K);

/// Exact solution of the linear harmonic case: x-Fourier-dependent z shift,
/// free anisotropic (x,y) propagator, confinement eigenphases, inverse shift.
/// Uses the computed harmonic eigenbasis for the z eigenphases.  Rejects
/// when significantly populated wavevectors would be shifted past the box
/// margin.
Field3D analytic_harmonic_benchmark(const Field3D& psi0, double a, double B, double eps,
                                    double t, const EigenBasis& basis);

/// e^{-i t E_p / eps^2} with the phase reduced in extended precision.
cplx eigenphase(double t, double E, double eps);

struct ErrorCurve {
  std::vector<double> t, e;
  double sup = 0.0;
};

/// B^1 distance between the full solution and the mode-phased reduced
/// approximation sum_p e^{-i t E_p/eps^2} phi_p chi_p at matched snapshots.
ErrorCurve theorem_error(const std::vector<Field3D>& full_snaps,
                         const std::vector<ModeSet>& limit_snaps,
                         const std::vector<double>& times, const EigenBasis& basis,
                         double eps);

}  // namespace cyqw
