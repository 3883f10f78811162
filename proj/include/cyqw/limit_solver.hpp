#pragma once

#include <string>
#include <vector>

#include "cyqw/coupling.hpp"
#include "cyqw/field.hpp"
#include "cyqw/norms.hpp"
#include "cyqw/poisson.hpp"
#include "cyqw/spectrum.hpp"

namespace cyqw {

/// Time series of the separately conserved quantities of the limit model.
struct DiagnosticsRecord {
  std::vector<double> t;
  std::vector<double> mass;
  std::vector<std::vector<double>> mode_mass;  // per snapshot, length P
  std::vector<double> Econf;
  std::vector<double> Etr;
  std::vector<double> Ekin_x, Ekin_y, Epot;  // E_tr split
};

struct LimitEnergies {
  double Econf = 0.0, Etr = 0.0;
  double Ekin_x = 0.0, Ekin_y = 0.0, Epot = 0.0;
  std::vector<double> mode_mass;
};

/// phi_p(0) = <Psi_0 chi_p>.  Rejects when the mode-truncation tail exceeds
/// tail_threshold of the L2 mass.
ModeSet init_modes(const Field3D& psi0, const EigenBasis& basis,
                   double tail_threshold = 1e-6);

/// One Strang step of i d_t phi_p = -alpha_p d_x^2 phi_p - d_y^2 phi_p + W phi_p:
/// half kinetic, full potential with W evaluated mid-step, half kinetic.
/// When use_W is false the potential substep is skipped (free flow).
void step_limit(ModeSet& m, double dt, const std::vector<double>& alpha,
                const KernelMultiplier& K2, bool use_W = true);

LimitEnergies energies(const ModeSet& m, const EigenBasis& basis,
                       const std::vector<double>& alpha, const KernelMultiplier& K2,
                       bool use_W = true);

struct LimitRunConfig {
  double T = 1.0;
  double dt = 1e-3;
  double snap_dt = 0.1;
  bool use_W = true;
  double guard_factor = 1e3;  // blow-up guard on the B^1 norm
  bool override_negative_alpha = false;
};

struct LimitTrajectory {
  std::vector<double> times;
  std::vector<ModeSet> snaps;
  DiagnosticsRecord diag;
  std::string halt;  // empty = ran to T
};

LimitTrajectory evolve_limit(const ModeSet& m0, const EigenBasis& basis,
                             const std::vector<double>& alpha, const KernelMultiplier& K2,
                             const LimitRunConfig& cfg);

}  // namespace cyqw
