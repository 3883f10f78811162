#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "cyqw/norms.hpp"
#include "cyqw/reference.hpp"
#include "cyqw/spectrum.hpp"
#include "doctest.h"

using namespace cyqw;

namespace {
EigenBasis harmonic_basis(double a, double B, int P, int nz = 512, double Lz = 10.0) {
  PotentialSpec s;
  s.a = a;
  s.B = B;
  const Grid1D g = Grid1D::make(Lz, nz);
  return solve_eigs(build_potential(s, g), g, P);
}
}  // namespace

TEST_CASE("harmonic well: eigenvalues match (2p+1) omega") {
  const EigenBasis b = harmonic_basis(1.0, 1.0, 8, 1024);
  const double om = std::sqrt(2.0);
  for (int p = 0; p < 8; ++p)
    CHECK(b.E[p] == doctest::Approx((2 * p + 1) * om).epsilon(1e-6));
}

TEST_CASE("quartic well: eigenvalues match spectral-method oracle") {
  // V = z^2 (1 + z^2); reference values from a dense periodic Fourier
  // diagonalization at two resolutions agreeing to ~1e-10.
  const double oracle[6] = {1.39235164158, 4.64881270420, 8.65504995778,
                            13.1568038980, 18.0575574363, 23.2974414512};
  PotentialSpec s;
  s.kind = PotentialSpec::Kind::Power;
  s.a = 1.0;
  s.s = 4.0;
  const Grid1D g = Grid1D::make(10.0, 1024);
  const EigenBasis b = solve_eigs(build_potential(s, g), g, 6);
  for (int p = 0; p < 6; ++p)
    CHECK(b.E[p] == doctest::Approx(oracle[p]).epsilon(1e-6));
}

TEST_CASE("eigenbasis invariants: orthonormality, parity, sign") {
  const EigenBasis b = harmonic_basis(1.0, 0.5, 6);
  const int nz = b.grid.nz;
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q <= p; ++q) {
      double s = 0.0;
      for (int j = 0; j < nz; ++j) s += b.mode(p)[j] * b.mode(q)[j];
      s *= b.grid.dz;
      CHECK(s == doctest::Approx(p == q ? 1.0 : 0.0).epsilon(1e-9));
    }
  // parity alternation on the paired nodes
  for (int p = 0; p < 6; ++p) {
    const double sgn = (p % 2 == 0) ? 1.0 : -1.0;
    double dev = 0.0;
    for (int j = 1; j < nz; ++j)
      dev = std::max(dev, std::abs(b.mode(p)[j] - sgn * b.mode(p)[nz - j]));
    CHECK(dev < 1e-7);
  }
  // ground state positive (sign convention)
  double mx = 0.0;
  for (int j = 0; j < nz; ++j) mx = std::max(mx, b.mode(0)[j]);
  CHECK(mx > 0.0);
}

TEST_CASE("automatic mode count picks the 20x gap rule") {
  PotentialSpec s;
  s.a = 1.0;
  const Grid1D g = Grid1D::make(10.0, 512);
  const Potential pot = build_potential(s, g);
  // E_p = 2p+1: smallest P with E_{P-1} >= 20 E_0 = 20 is P = 11 (E_10 = 21)
  CHECK(select_P(pot, g, 16) == 11);
}

TEST_CASE("gap report passes for the harmonic spectrum") {
  const EigenBasis b = harmonic_basis(1.0, 0.0, 10, 1024);
  const GapReport gr = check_gap(b);
  CHECK(gr.pass);
  CHECK(!gr.low_confidence);
  for (double gp : gr.gaps) CHECK(gp == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("projection/synthesis round trip on a band-limited field") {
  const EigenBasis b = harmonic_basis(1.0, 0.0, 5);
  const Grid2D g2 = Grid2D::make(8.0, 8.0, 8, 8);
  Field3D f = Field3D::make(Repr::GridZ, g2, b.grid, b.grid.nz);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      for (int k = 0; k < b.grid.nz; ++k)
        f.at(i, j, k) = cplx(0.7 * b.mode(0)[k] - 0.2 * b.mode(3)[k],
                             0.1 * b.mode(1)[k]) * (1.0 + 0.1 * i - 0.05 * j);
  double tail = 1.0;
  const Field3D m = project_modes(f, b, &tail);
  CHECK(tail < 1e-12);
  const Field3D r = synth_modes(m, b);
  double dev = 0.0;
  for (std::size_t k = 0; k < f.v.size(); ++k) dev = std::max(dev, std::abs(f.v[k] - r.v[k]));
  CHECK(dev < 1e-10);
}

TEST_CASE("serial reference projection/synthesis is bitwise identical") {
  const EigenBasis b = harmonic_basis(1.5, 0.7, 6, 256, 8.0);
  const Grid2D g2 = Grid2D::make(8.0, 8.0, 8, 4);
  Field3D f = Field3D::make(Repr::GridZ, g2, b.grid, b.grid.nz);
  std::uint64_t s = 3;
  for (cplx& c : f.v) {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    c = cplx((double)(s >> 33) * 1e-10, (double)(s >> 13 & 0xfffff) * 1e-7);
  }
  const Field3D mp = project_modes(f, b);
  const Field3D ms = project_modes_serial(f, b);
  for (std::size_t k = 0; k < mp.v.size(); ++k) CHECK(mp.v[k] == ms.v[k]);
  const Field3D sp = synth_modes(mp, b);
  const Field3D ss = synth_modes_serial(mp, b);
  for (std::size_t k = 0; k < sp.v.size(); ++k) CHECK(sp.v[k] == ss.v[k]);
}

TEST_CASE("confinement Sobolev norm: m=0 equals L2 exactly, plane-wave oracle") {
  const EigenBasis b = harmonic_basis(1.0, 0.0, 4, 256, 8.0);
  const Grid2D g2 = Grid2D::make(16.0, 16.0, 16, 16);
  Field3D f = Field3D::make(Repr::GridZ, g2, b.grid, b.grid.nz);
  // single mode p = 2, plane wave in x (mode index 3)
  const double xi0 = g2.xi[3];
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      for (int k = 0; k < b.grid.nz; ++k)
        f.at(i, j, k) = std::polar(1.0, xi0 * g2.x[i]) * b.mode(2)[k];
  const double l2 = l2_norm(f);
  CHECK(bm_norm(f, 0, b) == l2);  // exact collapse by construction
  const double b1 = bm_norm(f, 1, b);
  const double expect = std::sqrt((1.0 + xi0 * xi0 + b.E[2]) * l2 * l2);
  CHECK(b1 == doctest::Approx(expect).epsilon(1e-10));
  const double b2 = bm_norm(f, 2, b);
  const double expect2 = std::sqrt((1.0 + std::pow(xi0, 4) + b.E[2] * b.E[2]) * l2 * l2);
  CHECK(b2 == doctest::Approx(expect2).epsilon(1e-10));
  CHECK(b1 >= l2);   // monotone in m
  CHECK(b2 >= b1);
  CHECK_THROWS(bm_norm(f, 9, b));  // weight overflow guard
}

TEST_CASE("reduced-state norm agrees with the 3D norm of its synthesis") {
  const EigenBasis b = harmonic_basis(1.0, 1.0, 4, 256, 8.0);
  const Grid2D g2 = Grid2D::make(16.0, 16.0, 16, 16);
  ModeSet m = ModeSet::make(g2, 4);
  for (int p = 0; p < 4; ++p)
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j)
        m.phi[p][(std::size_t)i * 16 + j] =
            std::exp(-(g2.x[i] * g2.x[i] + g2.y[j] * g2.y[j]) / 4.0) *
            cplx(1.0 / (p + 1), 0.3 * p);
  Field3D f = Field3D::make(Repr::ModeZ, g2, b.grid, 4);
  for (int p = 0; p < 4; ++p)
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j) f.at(i, j, p) = m.phi[p][(std::size_t)i * 16 + j];
  CHECK(bm_norm(m, 1, b.E) == doctest::Approx(bm_norm(f, 1, b)).epsilon(1e-12));
  CHECK(l2_norm(m) == doctest::Approx(l2_norm(f)).epsilon(1e-12));
}

TEST_CASE("potential audit rejects bad inputs") {
  const Grid1D g = Grid1D::make(8.0, 64);
  PotentialSpec s;
  s.kind = PotentialSpec::Kind::Tabulated;
  s.table.assign(64, 1.0);
  s.table[5] = -2.0;  // negative sample
  CHECK_THROWS(build_potential(s, g));
  s.table.assign(64, 0.0);
  for (int j = 0; j < 64; ++j) s.table[j] = g.z[j] * g.z[j] + (j == 7 ? 0.5 : 0.0);
  CHECK_THROWS(build_potential(s, g));  // asymmetry beyond tolerance
}
