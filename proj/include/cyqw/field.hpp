#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cyqw/grid.hpp"

namespace cyqw {

enum class Repr : std::uint8_t { GridZ = 0, ModeZ = 1 };

/// Complex 3D state.  Layout is row-major (i,j,k) with the z (or mode) index
/// k fastest.  In grid-z representation nzp = n_z and zgrid describes the z
/// line; in mode-z representation nzp = P and zgrid is the grid the
/// eigenbasis lives on.
struct Field3D {
  Repr repr = Repr::GridZ;
  Grid2D g2;
  Grid1D zgrid;
  int nzp = 0;
  std::vector<cplx> v;

  static Field3D make(Repr repr, const Grid2D& g2, const Grid1D& zgrid, int nzp);

  cplx& at(int i, int j, int k) {
    return v[(static_cast<std::size_t>(i) * g2.ny + j) * nzp + k];
  }
  const cplx& at(int i, int j, int k) const {
    return v[(static_cast<std::size_t>(i) * g2.ny + j) * nzp + k];
  }
  std::size_t size() const { return v.size(); }
  /// Volume element of one sample: dx*dy*dz in grid-z, dx*dy in mode-z
  /// (modes are orthonormal in the z quadrature, so no dz factor).
  double dvol() const { return repr == Repr::GridZ ? g2.dx * g2.dy * zgrid.dz : g2.dx * g2.dy; }

  /// First non-finite entry, or -1 if all finite.
  long long first_bad_index() const;
};

/// Reduced state of the limit model: P complex 2D arrays on a shared Grid2D.
/// Layout phi[p][i*ny + j].
struct ModeSet {
  Grid2D g2;
  int P = 0;
  double t = 0.0;
  std::vector<std::vector<cplx>> phi;

  static ModeSet make(const Grid2D& g2, int P);
};

/// Unitary (x,y) Fourier transform of a Field3D (either representation);
/// direction = -1 forward, +1 inverse.
void fourier_xy(Field3D& f, int direction);
void fourier_xy(ModeSet& m, int direction);

/// Binary field container: magic "CYQW", version u16 = 1, representation tag
/// u8, dims u32, grid parameters at fixed offsets in a 256-byte header,
/// float64 little-endian interleaved (re,im) payload, z/mode index fastest.
void write_field(const std::string& path, const Field3D& f);
Field3D read_field(const std::string& path);

std::uint64_t field_fingerprint(const Field3D& f);

}  // namespace cyqw
