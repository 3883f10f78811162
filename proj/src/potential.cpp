#include "cyqw/potential.hpp"

#include <algorithm>
#include <cmath>

namespace cyqw {

namespace {
double sample(const PotentialSpec& s, double z, int j) {
  switch (s.kind) {
    case PotentialSpec::Kind::Harmonic:
      return s.a * s.a * z * z;
    case PotentialSpec::Kind::Power:
      return s.a * s.a * z * z * std::pow(1.0 + z * z, 0.5 * (s.s - 2.0));
    case PotentialSpec::Kind::PerturbedHarmonic:
      return s.a * s.a * z * z + s.table[j];
    case PotentialSpec::Kind::Tabulated:
      return s.table[j];
  }
  return 0.0;
}
}  // namespace

Potential build_potential(const PotentialSpec& spec, const Grid1D& grid) {
  const int nz = grid.nz;
  const bool tab = spec.kind == PotentialSpec::Kind::PerturbedHarmonic ||
                   spec.kind == PotentialSpec::Kind::Tabulated;
  if (tab && static_cast<int>(spec.table.size()) != nz)
    throw Error("build_potential: table must have n_z samples");
  if (spec.kind == PotentialSpec::Kind::Power && spec.s < 2.0)
    throw Error("build_potential: power exponent must be >= 2");

  Potential pot;
  pot.B = spec.B;
  pot.Vc.resize(nz);
  for (int j = 0; j < nz; ++j) pot.Vc[j] = sample(spec, grid.z[j], j);

  const double vmax = *std::max_element(pot.Vc.begin(), pot.Vc.end());
  // Even symmetrization over the paired nodes j <-> nz-j (j=0 is the
  // unpaired -L endpoint).
  double corr = 0.0;
  for (int j = 1; j <= nz - j; ++j) {
    const int jm = nz - j;
    const double d = std::abs(pot.Vc[j] - pot.Vc[jm]);
    corr = std::max(corr, d);
    const double avg = 0.5 * (pot.Vc[j] + pot.Vc[jm]);
    pot.Vc[j] = pot.Vc[jm] = avg;
  }
  pot.audit.even_correction = corr;
  pot.audit.even_corrected = corr > 1e-12 * std::max(vmax, 1.0);
  if (tab && corr > 1e-8 * std::max(vmax, 1.0))
    throw Error("build_potential: tabulated potential has odd content");
  const double vmin = *std::min_element(pot.Vc.begin(), pot.Vc.end());
  if (vmin < 0.0)
    throw Error("build_potential: negative potential after symmetrization");

  // Growth audit on |z| >= 1: a_fit^2 z^2 <= V <= C |z|^M.
  double a2min = std::numeric_limits<double>::infinity();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  bool logok = true;
  for (int j = 0; j < nz; ++j) {
    const double az = std::abs(grid.z[j]);
    if (az < 1.0) continue;
    a2min = std::min(a2min, pot.Vc[j] / (grid.z[j] * grid.z[j]));
    if (pot.Vc[j] <= 0.0) { logok = false; continue; }
    const double lx = std::log(az), ly = std::log(pot.Vc[j]);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    ++cnt;
  }
  if (cnt >= 2 && logok) {
    const double M = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    pot.audit.M_fit = M;
    double C = 0.0;
    for (int j = 0; j < nz; ++j) {
      const double az = std::abs(grid.z[j]);
      if (az < 1.0) continue;
      C = std::max(C, pot.Vc[j] / std::pow(az, M));
    }
    pot.audit.C_fit = C;
  }
  pot.audit.a_fit = (cnt > 0 && a2min > 0.0) ? std::sqrt(a2min) : 0.0;
  pot.audit.pass = vmin >= 0.0 && pot.audit.a_fit > 0.0 && logok;

  pot.fingerprint = fnv1a(pot.Vc);
  pot.fingerprint = fnv1a(&pot.B, sizeof(double), pot.fingerprint);
  return pot;
}

}  // namespace cyqw
