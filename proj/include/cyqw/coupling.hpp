#pragma once

#include <cstdint>
#include <vector>

#include "cyqw/field.hpp"
#include "cyqw/potential.hpp"
#include "cyqw/spectrum.hpp"

namespace cyqw {

/// Subband coupling matrix a_pq = <2Bz chi_p chi_q> and the effective-mass
/// coefficients alpha_p = 1 - sum_{q != p} a_pq^2 / (E_q - E_p).
struct CouplingData {
  int P = 0;
  std::vector<double> a;          // P x P, row-major
  std::vector<double> alpha;      // truncated to q < P
  std::vector<double> alpha_alt;  // equivalent form 1 + sum a_pq^2/(E_p - E_q)
  std::vector<double> tail_bound; // heuristic bound on the neglected q >= P sum
  std::vector<int> trusted;       // 1 if p is far enough from the truncation edge
  std::uint64_t basis_fingerprint = 0;

  double at(int p, int q) const { return a[(std::size_t)p * P + q]; }
};

std::vector<double> coupling_coeffs(const EigenBasis& basis, double B);

CouplingData effective_mass_coeffs(const EigenBasis& basis, double B);

/// Averaged transport operator: multiplies mode p by alpha_p xi^2 in
/// x-Fourier space (the symbol of -sum_p alpha_p d_x^2 Pi_p).
ModeSet apply_A0(const ModeSet& m, const std::vector<double>& alpha);

/// Oscillatory first-order operator:
///   out_p = -sum_{q != p} e^{i tau (E_p - E_q)} a_pq (i d_x phi_q).
ModeSet oscillatory_a(double tau, const ModeSet& m, const CouplingData& cd,
                      const std::vector<double>& E);

/// Resonant part of the second-order average: the coefficient of -d_x^2 on
/// mode p, which must reproduce alpha_p.  Returns per-p discrepancy.
std::vector<double> second_order_average(const CouplingData& cd, const std::vector<double>& E);

struct DispersionProbe {
  double eps = 0.0;
  std::vector<double> xi;        // probe wavevectors
  std::vector<double> lambda;    // per (xi index, p), row-major
  std::vector<double> curvature; // per-p symmetric-difference curvature
  double max_dev = 0.0;          // max_p |c_p - alpha_p| over trusted p
};

/// Per-wavevector eigenvalues of -d_z^2 + V_c + (eps xi + B z)^2 and the
/// curvature cross-check against alpha.
DispersionProbe dispersion_check(const Potential& pot, double eps,
                                 const std::vector<double>& xi_probe,
                                 const EigenBasis& basis, const CouplingData& cd);

}  // namespace cyqw
