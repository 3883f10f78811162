#pragma once

#include "cyqw/field.hpp"
#include "cyqw/spectrum.hpp"

namespace cyqw {

double l2_norm(const Field3D& f);
double l2_norm(const ModeSet& m);

struct BmResult {
  double value = 0.0;
  double tail_frac = 0.0;  // L2 mass fraction beyond the mode truncation
  bool warn = false;       // tail exceeded 1e-6 of the L2 mass
};

/// Confinement-adapted Sobolev norm
///   ||f||_{B^m}^2 = sum_{p,k,l} (1 + |k|^{2m} + E_p^m) |fhat_{p,k,l}|^2
/// in the (x,y)-Fourier x z-eigenmode representation.  m = 0 collapses to
/// l2_norm exactly; m > 8 is rejected.
BmResult bm_norm_full(const Field3D& f, int m, const EigenBasis& basis);
double bm_norm(const Field3D& f, int m, const EigenBasis& basis);

/// Same norm evaluated directly on a reduced state.
double bm_norm(const ModeSet& ms, int m, const std::vector<double>& E);

}  // namespace cyqw
