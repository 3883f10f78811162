#pragma once

#include <cstdint>
#include <vector>

#include "cyqw/field.hpp"
#include "cyqw/grid.hpp"
#include "cyqw/potential.hpp"

namespace cyqw {

/// Lowest eigenpairs of H_z = -d^2/dz^2 + B^2 z^2 + V_c(z) with Dirichlet
/// ends.  chi is stored on the full grid (chi[p*nz + j], chi = 0 at j = 0),
/// L2-normalized in the dz quadrature, sign fixed so the first interior
/// extremum from the left is positive.
struct EigenBasis {
  int P = 0;
  Grid1D grid;
  std::vector<double> E;    // ascending
  std::vector<double> chi;  // P x nz
  std::uint64_t potential_fingerprint = 0;

  const double* mode(int p) const { return chi.data() + static_cast<std::size_t>(p) * grid.nz; }
};

struct GapReport {
  std::vector<double> gaps;  // E_{p+1} - E_p
  double n0 = 0.0;           // fitted decay exponent in C (1+p)^{-n0}, clipped at 0
  double C = 0.0;            // worst-case constant so the bound holds
  bool pass = false;
  bool low_confidence = false;
};

/// Numerov-discretized eigensolve via shift-invert Lanczos.  All EigenBasis
/// invariants (orthonormality, simple ascending spectrum, parity
/// alternation, Weyl lower bound, Rayleigh consistency) are verified before
/// returning.
EigenBasis solve_eigs(const Potential& pot, const Grid1D& grid, int P);

/// Same discretization for an arbitrary total potential W(z) (used by the
/// per-wavevector shifted problems); skips the even-potential invariants.
void solve_eigs_raw(const std::vector<double>& W, const Grid1D& grid, int P,
                    std::vector<double>& E, std::vector<double>& chi);

GapReport check_gap(const EigenBasis& basis);

/// phi_p(x,y) = sum_j f(x,y,z_j) chi_p(z_j) dz.  tail_frac receives the L2
/// mass fraction not captured by the first P modes.
Field3D project_modes(const Field3D& f, const EigenBasis& basis, double* tail_frac = nullptr);
Field3D synth_modes(const Field3D& f, const EigenBasis& basis);

/// Smallest P with E_{P-1} >= 20 E_0 (capped at n_z/4).
int select_P(const Potential& pot, const Grid1D& grid, int Pmax);

}  // namespace cyqw
