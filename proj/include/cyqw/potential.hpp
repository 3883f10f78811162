#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cyqw/grid.hpp"

namespace cyqw {

/// Confinement potential families.  All are even and nonnegative; `power`
/// uses V(z) = a^2 z^2 (1+z^2)^{(s-2)/2}, a smooth even core matching a^2 z^2
/// near the origin and growing like a^2 |z|^s.
struct PotentialSpec {
  enum class Kind { Harmonic, Power, PerturbedHarmonic, Tabulated };
  Kind kind = Kind::Harmonic;
  double a = 1.0;      // confinement scale
  double s = 2.0;      // power exponent (>= 2)
  double B = 0.0;      // in-plane magnetic field strength
  std::vector<double> table;  // even sample table for PerturbedHarmonic / Tabulated
};

/// Growth audit: checks a_fit^2 z^2 <= V_c(z) <= C_fit |z|^{M_fit} on |z| >= 1.
struct GrowthAudit {
  bool pass = false;
  double a_fit = 0.0;
  double C_fit = 0.0;
  double M_fit = 0.0;
  double even_correction = 0.0;  // size of the symmetrization applied
  bool even_corrected = false;   // correction exceeded 1e-12 * max V
};

struct Potential {
  std::vector<double> Vc;  // V_c samples on the grid (without the B^2 z^2 term)
  double B = 0.0;
  GrowthAudit audit;
  std::uint64_t fingerprint = 0;
};

Potential build_potential(const PotentialSpec& spec, const Grid1D& grid);

}  // namespace cyqw
